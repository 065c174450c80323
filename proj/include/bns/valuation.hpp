#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bns/character.hpp"
#include "bns/facts.hpp"
#include "bns/hnn.hpp"
#include "bns/oracle.hpp"

namespace bns {

// An HNN valuation v: G → ℚ ∪ {∞} relative to a character χ:
//   (a) v(g⁻¹) = v(g) + χ(g)
//   (b) v(gh) ≥ min{v(g), v(h) − χ(g)}
//   (c) non-trivial: v is unbounded below on ker χ, exhibited by
//       witness(1), witness(2), ... with strictly decreasing values.
struct HnnValuation {
  std::string label;
  Character relative_character;
  std::function<ExtendedRational(const Word&)> evaluator;
  std::function<Word(std::int64_t)> witness;
};

struct AxiomViolation {
  char axiom = 'a';  // 'a' or 'b'
  Word g;
  Word h;  // empty for axiom (a)
  std::string lhs;
  std::string rhs;
};

struct AxiomReport {
  std::size_t words_checked = 0;
  std::size_t pairs_checked = 0;
  std::vector<AxiomViolation> violations;  // sorted: shortlex on g, then h
  std::vector<ExtendedRational> witness_trace;
  bool witnesses_in_kernel = true;
  bool trace_strictly_decreasing = true;

  std::size_t violations_of(char axiom) const;
  bool pass() const;
  AxiomSummary summary() const;
  void merge(const AxiomReport& other);  // keeps this report's witness trace
};

// Checks (a) on every sample word, (b) on ordered sample pairs in order until
// `pair_budget` pairs are done, and the witness trace for k = 1..witness_depth.
// Throws EvaluatorUndefined when the evaluator fails on a word.
AxiomReport check_valuation_axioms(const HnnValuation& v, std::span<const Word> sample,
                                   std::size_t pair_budget, std::size_t witness_depth);

// Axiom (b) (and (a) on both factors) for `pairs` random pairs of reduced
// words of length ≤ max_length, drawn from a seeded generator.
AxiomReport check_valuation_random(const HnnValuation& v, std::size_t max_length,
                                   std::size_t pairs, std::uint64_t seed,
                                   std::size_t witness_depth);

// The valuation v(g) = val_n(translation of g) on BS(1,n), relative to −χ
// where χ(t) = 1, χ(a) = 0. witness(k) = t^{-k} a t^{k}, v = −k.
HnnValuation bs_valuation(long n);
// Same, over an existing presentation: generator a_index plays a and
// generator t_index raised to t_sign plays t.
HnnValuation bs_valuation(long n, std::shared_ptr<const GroupPresentation> group,
                          std::size_t a_index, std::size_t t_index, int t_sign = 1);

// NOT_IN_SIGMA([relative character]) backed by a passing report. Throws
// MalformedCertificate if the report does not pass.
SigmaFact valuation_fact(const HnnValuation& v, const AxiomReport& report);

}  // namespace bns
