#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bns/numeric.hpp"
#include "bns/presentation.hpp"
#include "bns/word.hpp"

namespace bns {

// Exact word problem for a concrete group family. Generators are indexed
// 0..rank()-1 and carry symbols (alphabet()) so oracles can be bound to a
// presentation by name.
//
// Contract: normal_form is idempotent, is_identity(w) ⇔ normal_form(w) is
// empty, and normal_form(u·v) = normal_form(normal_form(u)·normal_form(v)).
class WordOracle {
 public:
  virtual ~WordOracle() = default;

  virtual const std::vector<std::string>& alphabet() const = 0;
  virtual Word normal_form(const Word& w) const = 0;
  virtual bool is_identity(const Word& w) const { return normal_form(w).empty(); }
  // Short family tag, e.g. "bs(2)", "free(2) x free_abelian(1)".
  virtual std::string family() const = 0;
  // True when the group is free abelian on the alphabet, so elements are
  // determined by exponent sums and subgroup questions reduce to lattices.
  virtual bool is_free_abelian() const { return false; }

  std::size_t rank() const { return alphabet().size(); }
};

using OraclePtr = std::shared_ptr<const WordOracle>;

OraclePtr oracle_free(std::vector<std::string> symbols);
OraclePtr oracle_free_abelian(std::vector<std::string> symbols);
// BS(1,n) = ⟨a, t | t a t⁻¹ = aⁿ⟩; index 0 is `a`, index 1 is `t`.
OraclePtr oracle_bs(long n, std::string a_symbol = "a", std::string t_symbol = "t");
// Direct product; letters of the second factor are shifted past the first.
// Throws AlphabetCollision when the symbol sets intersect.
OraclePtr oracle_direct_product(OraclePtr first, OraclePtr second);
// Adds generators defined as words over `base`'s alphabet (e.g. u = a t).
OraclePtr oracle_extended(OraclePtr base, std::vector<std::string> extra_symbols,
                          std::vector<Word> extra_definitions);

// Re-indexes `oracle` to the generator order of `presentation` (the symbol
// sets must coincide) and checks every relator is trivial under it.
// Throws InvalidPresentation on any mismatch.
OraclePtr bind_oracle(OraclePtr oracle, const GroupPresentation& presentation);

// x ↦ n^k x + b with b ∈ ℤ[1/n].
struct AffineElement {
  long n = 2;
  std::int64_t scale_exponent = 0;
  Rational translation = 0;

  static AffineElement identity(long n) { return AffineElement{n, 0, Rational(0)}; }
  // (k₁,b₁)∘(k₂,b₂) = (k₁+k₂, n^{k₁}b₂ + b₁)
  AffineElement compose(const AffineElement& rhs) const;
  AffineElement inverse() const;
  Rational apply(const Rational& x) const;

  friend bool operator==(const AffineElement& a, const AffineElement& b) {
    return a.n == b.n && a.scale_exponent == b.scale_exponent && a.translation == b.translation;
  }
};

// Evaluates a word over (a, t) in the affine model of BS(1,n): a ↦ x+1,
// t ↦ nx. eval(u·v) = eval(u)∘eval(v).
AffineElement affine_eval(long n, const Word& w);
// Britton-reduced word t^{-p} a^m t^q with p, q ≥ 0 and not (p > 0, q > 0, n | m).
Word bs_normal_form(const AffineElement& g);

// ℚ ∪ {+∞}, totally ordered with ∞ maximal.
class ExtendedRational {
 public:
  ExtendedRational() : infinite_(true) {}
  ExtendedRational(Rational value) : value_(std::move(value)), infinite_(false) {}  // NOLINT
  static ExtendedRational infinity() { return ExtendedRational(); }

  bool is_infinite() const noexcept { return infinite_; }
  const Rational& value() const;  // throws on ∞

  ExtendedRational operator+(const ExtendedRational& rhs) const;
  ExtendedRational operator-(const Rational& rhs) const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) { return !(b < a); }
  friend bool operator>=(const ExtendedRational& a, const ExtendedRational& b) { return !(a < b); }
  friend bool operator>(const ExtendedRational& a, const ExtendedRational& b) { return b < a; }

  std::string to_string() const;

 private:
  Rational value_;
  bool infinite_;
};

ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b);

// min over primes p | n of v_p(b) / v_p(n); ∞ at b = 0. Throws
// InvalidArgument for n < 2 and NotInRing when b ∉ ℤ[1/n].
ExtendedRational n_adic_valuation(const Rational& b, long n);

std::vector<long> prime_factors(long n);

}  // namespace bns
