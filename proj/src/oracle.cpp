#include "bns/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bns/error.hpp"

namespace bns {

namespace {

class FreeOracle final : public WordOracle {
 public:
  explicit FreeOracle(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {}
  const std::vector<std::string>& alphabet() const override { return symbols_; }
  Word normal_form(const Word& w) const override { return w; }
  std::string family() const override { return "free(" + std::to_string(symbols_.size()) + ")"; }
  bool is_free_abelian() const override { return symbols_.size() == 1; }

 private:
  std::vector<std::string> symbols_;
};

class FreeAbelianOracle final : public WordOracle {
 public:
  explicit FreeAbelianOracle(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {}
  const std::vector<std::string>& alphabet() const override { return symbols_; }
  Word normal_form(const Word& w) const override {
    auto sums = w.exponent_sums(symbols_.size());
    std::vector<Letter> letters;
    for (std::size_t g = 0; g < sums.size(); ++g)
      if (sums[g] != 0) letters.push_back(Letter{g, sums[g]});
    return Word(std::move(letters));
  }
  std::string family() const override {
    return "free_abelian(" + std::to_string(symbols_.size()) + ")";
  }
  bool is_free_abelian() const override { return true; }

 private:
  std::vector<std::string> symbols_;
};

class BsOracle final : public WordOracle {
 public:
  BsOracle(long n, std::string a, std::string t) : n_(n), symbols_{std::move(a), std::move(t)} {}
  const std::vector<std::string>& alphabet() const override { return symbols_; }
  Word normal_form(const Word& w) const override { return bs_normal_form(affine_eval(n_, w)); }
  bool is_identity(const Word& w) const override {
    auto g = affine_eval(n_, w);
    return g.scale_exponent == 0 && g.translation == 0;
  }
  std::string family() const override { return "bs(" + std::to_string(n_) + ")"; }

 private:
  long n_;
  std::vector<std::string> symbols_;
};

class ProductOracle final : public WordOracle {
 public:
  ProductOracle(OraclePtr first, OraclePtr second)
      : first_(std::move(first)), second_(std::move(second)) {
    symbols_ = first_->alphabet();
    symbols_.insert(symbols_.end(), second_->alphabet().begin(), second_->alphabet().end());
  }
  const std::vector<std::string>& alphabet() const override { return symbols_; }
  Word normal_form(const Word& w) const override {
    const std::size_t split = first_->rank();
    std::vector<Letter> left, right;
    for (const auto& l : w.letters()) {
      if (l.generator < split)
        left.push_back(l);
      else
        right.push_back(Letter{l.generator - split, l.exponent});
    }
    Word a = first_->normal_form(Word(std::move(left)));
    Word b = second_->normal_form(Word(std::move(right)));
    std::vector<Letter> out(a.letters().begin(), a.letters().end());
    for (const auto& l : b.letters()) out.push_back(Letter{l.generator + split, l.exponent});
    return Word(std::move(out));
  }
  std::string family() const override {
    return first_->family() + " x " + second_->family();
  }
  bool is_free_abelian() const override {
    return first_->is_free_abelian() && second_->is_free_abelian();
  }

 private:
  OraclePtr first_;
  OraclePtr second_;
  std::vector<std::string> symbols_;
};

class ExtendedOracle final : public WordOracle {
 public:
  ExtendedOracle(OraclePtr base, std::vector<std::string> extra, std::vector<Word> defs)
      : base_(std::move(base)), definitions_(std::move(defs)) {
    symbols_ = base_->alphabet();
    symbols_.insert(symbols_.end(), extra.begin(), extra.end());
  }
  const std::vector<std::string>& alphabet() const override { return symbols_; }
  Word normal_form(const Word& w) const override {
    const std::size_t base_rank = base_->rank();
    Word expanded;
    for (const auto& l : w.letters()) {
      if (l.generator < base_rank)
        expanded = expanded * Word::generator(l.generator, l.exponent);
      else
        expanded = expanded * definitions_[l.generator - base_rank].power(l.exponent);
    }
    return base_->normal_form(expanded);
  }
  std::string family() const override { return base_->family() + "+extended"; }

 private:
  OraclePtr base_;
  std::vector<Word> definitions_;
  std::vector<std::string> symbols_;
};

class RelabeledOracle final : public WordOracle {
 public:
  RelabeledOracle(OraclePtr inner, std::vector<std::string> symbols,
                  std::vector<std::size_t> to_inner)
      : inner_(std::move(inner)), symbols_(std::move(symbols)), to_inner_(std::move(to_inner)) {
    from_inner_.resize(to_inner_.size());
    for (std::size_t i = 0; i < to_inner_.size(); ++i) from_inner_[to_inner_[i]] = i;
  }
  const std::vector<std::string>& alphabet() const override { return symbols_; }
  Word normal_form(const Word& w) const override {
    return translate(inner_->normal_form(translate(w, to_inner_)), from_inner_);
  }
  bool is_identity(const Word& w) const override {
    return inner_->is_identity(translate(w, to_inner_));
  }
  std::string family() const override { return inner_->family(); }
  bool is_free_abelian() const override { return inner_->is_free_abelian(); }

 private:
  static Word translate(const Word& w, const std::vector<std::size_t>& map) {
    std::vector<Letter> out;
    out.reserve(w.syllable_count());
    for (const auto& l : w.letters()) out.push_back(Letter{map.at(l.generator), l.exponent});
    return Word(std::move(out));
  }

  OraclePtr inner_;
  std::vector<std::string> symbols_;
  std::vector<std::size_t> to_inner_;
  std::vector<std::size_t> from_inner_;
};

void require_distinct(const std::vector<std::string>& symbols) {
  std::set<std::string> seen;
  for (const auto& s : symbols) {
    if (!is_valid_symbol(s))
      throw Error(ErrorKind::InvalidArgument, "malformed generator symbol '" + s + "'");
    if (!seen.insert(s).second)
      throw Error(ErrorKind::AlphabetCollision, "generator symbol '" + s + "' used twice");
  }
}

}  // namespace

OraclePtr oracle_free(std::vector<std::string> symbols) {
  if (symbols.empty()) throw Error(ErrorKind::InvalidArgument, "free group oracle needs rank >= 1");
  require_distinct(symbols);
  return std::make_shared<FreeOracle>(std::move(symbols));
}

OraclePtr oracle_free_abelian(std::vector<std::string> symbols) {
  if (symbols.empty())
    throw Error(ErrorKind::InvalidArgument, "free abelian oracle needs rank >= 1");
  require_distinct(symbols);
  return std::make_shared<FreeAbelianOracle>(std::move(symbols));
}

OraclePtr oracle_bs(long n, std::string a_symbol, std::string t_symbol) {
  if (n < 2)
    throw Error(ErrorKind::InvalidArgument,
                "BS(1,n) oracle needs n >= 2 (use free_abelian for n = 1)");
  require_distinct({a_symbol, t_symbol});
  return std::make_shared<BsOracle>(n, std::move(a_symbol), std::move(t_symbol));
}

OraclePtr oracle_direct_product(OraclePtr first, OraclePtr second) {
  std::vector<std::string> all = first->alphabet();
  all.insert(all.end(), second->alphabet().begin(), second->alphabet().end());
  require_distinct(all);
  return std::make_shared<ProductOracle>(std::move(first), std::move(second));
}

OraclePtr oracle_extended(OraclePtr base, std::vector<std::string> extra_symbols,
                          std::vector<Word> extra_definitions) {
  if (extra_symbols.size() != extra_definitions.size())
    throw Error(ErrorKind::InvalidArgument, "one definition per extra generator required");
  std::vector<std::string> all = base->alphabet();
  all.insert(all.end(), extra_symbols.begin(), extra_symbols.end());
  require_distinct(all);
  for (const auto& d : extra_definitions)
    for (const auto& l : d.letters())
      if (l.generator >= base->rank())
        throw Error(ErrorKind::InvalidArgument, "extra generator defined outside the base alphabet");
  return std::make_shared<ExtendedOracle>(std::move(base), std::move(extra_symbols),
                                          std::move(extra_definitions));
}

OraclePtr bind_oracle(OraclePtr oracle, const GroupPresentation& presentation) {
  const auto& inner = oracle->alphabet();
  const auto& gens = presentation.generators();
  if (inner.size() != gens.size())
    throw Error(ErrorKind::InvalidPresentation,
                "oracle family " + oracle->family() + " has " + std::to_string(inner.size()) +
                    " generators, presentation has " + std::to_string(gens.size()));
  std::vector<std::size_t> to_inner;
  for (const auto& g : gens) {
    auto it = std::find(inner.begin(), inner.end(), g);
    if (it == inner.end())
      throw Error(ErrorKind::InvalidPresentation,
                  "generator '" + g + "' is not in the oracle alphabet");
    to_inner.push_back(static_cast<std::size_t>(it - inner.begin()));
  }
  auto bound = std::make_shared<RelabeledOracle>(std::move(oracle), gens, std::move(to_inner));
  for (const auto& r : presentation.relators())
    if (!bound->is_identity(r))
      throw Error(ErrorKind::InvalidPresentation,
                  "relator '" + presentation.print(r) + "' is not trivial in " + bound->family());
  return bound;
}

AffineElement AffineElement::compose(const AffineElement& rhs) const {
  return AffineElement{n, scale_exponent + rhs.scale_exponent,
                       rational_power(n, scale_exponent) * rhs.translation + translation};
}

AffineElement AffineElement::inverse() const {
  // x = n^k y + b  ⇒  y = n^{-k} x - n^{-k} b
  Rational b = -rational_power(n, -scale_exponent) * translation;
  return AffineElement{n, -scale_exponent, b};
}

Rational AffineElement::apply(const Rational& x) const {
  return rational_power(n, scale_exponent) * x + translation;
}

AffineElement affine_eval(long n, const Word& w) {
  AffineElement acc = AffineElement::identity(n);
  for (const auto& l : w.letters()) {
    if (l.generator == 0) {
      acc.translation += rational_power(n, acc.scale_exponent) * Rational(static_cast<long>(l.exponent));
    } else if (l.generator == 1) {
      acc.scale_exponent += l.exponent;
    } else {
      throw Error(ErrorKind::InvalidArgument, "BS(1,n) words use generators 0 (a) and 1 (t) only");
    }
  }
  return acc;
}

Word bs_normal_form(const AffineElement& g) {
  const long n = g.n;
  std::int64_t p = 0;
  Rational m = g.translation;
  while (m.get_den() != 1) {
    m *= n;
    ++p;
  }
  if (p < -g.scale_exponent) {
    m *= rational_power(n, -g.scale_exponent - p);
    p = -g.scale_exponent;
  }
  std::int64_t q = g.scale_exponent + p;
  std::vector<Letter> letters;
  if (p != 0) letters.push_back(Letter{1, -p});
  if (m != 0) letters.push_back(Letter{0, m.get_num().get_si()});
  if (q != 0) letters.push_back(Letter{1, q});
  return Word(std::move(letters));
}

const Rational& ExtendedRational::value() const {
  if (infinite_) throw Error(ErrorKind::InvalidArgument, "value of +infinity requested");
  return value_;
}

ExtendedRational ExtendedRational::operator+(const ExtendedRational& rhs) const {
  if (infinite_ || rhs.infinite_) return infinity();
  return ExtendedRational(value_ + rhs.value_);
}

ExtendedRational ExtendedRational::operator-(const Rational& rhs) const {
  if (infinite_) return infinity();
  return ExtendedRational(value_ - rhs);
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return a.value_ < b.value_;
}

std::string ExtendedRational::to_string() const {
  return infinite_ ? std::string("inf") : bns::to_string(value_);
}

ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b) {
  return b < a ? b : a;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> primes;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    primes.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

namespace {

long multiplicity(Integer x, long p) {
  long v = 0;
  while (x != 0 && mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

}  // namespace

ExtendedRational n_adic_valuation(const Rational& b, long n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "n-adic valuation needs n >= 2");
  auto primes = prime_factors(n);
  Integer den = b.get_den();
  for (long p : primes)
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
      mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(p));
  if (den != 1)
    throw Error(ErrorKind::NotInRing,
                bns::to_string(b) + " is not in Z[1/" + std::to_string(n) + "]");
  if (b == 0) return ExtendedRational::infinity();
  std::optional<Rational> best;
  for (long p : primes) {
    long vb = multiplicity(b.get_num(), p) - multiplicity(b.get_den(), p);
    Rational ratio{Integer(vb), Integer(multiplicity(Integer(n), p))};
    ratio.canonicalize();
    if (!best || ratio < *best) best = ratio;
  }
  return ExtendedRational(*best);
}

}  // namespace bns
