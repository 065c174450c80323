#include "bns/valuation.hpp"

#include <algorithm>
#include <random>

#include "bns/error.hpp"

namespace bns {

std::size_t AxiomReport::violations_of(char axiom) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [axiom](const auto& v) { return v.axiom == axiom; }));
}

bool AxiomReport::pass() const {
  return violations.empty() && witnesses_in_kernel && trace_strictly_decreasing &&
         !witness_trace.empty();
}

AxiomSummary AxiomReport::summary() const {
  return AxiomSummary{pass(), words_checked, pairs_checked, violations.size(),
                      witness_trace.size()};
}

namespace {

bool violation_less(const AxiomViolation& x, const AxiomViolation& y) {
  if (x.g != y.g) return shortlex_less(x.g, y.g);
  if (x.h != y.h) return shortlex_less(x.h, y.h);
  return x.axiom < y.axiom;
}

void sort_violations(std::vector<AxiomViolation>& v) {
  std::stable_sort(v.begin(), v.end(), violation_less);
}

}  // namespace

void AxiomReport::merge(const AxiomReport& other) {
  words_checked += other.words_checked;
  pairs_checked += other.pairs_checked;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  sort_violations(violations);
}

namespace {

class Checker {
 public:
  explicit Checker(const HnnValuation& v) : v_(v) {}

  ExtendedRational value(const Word& w) const {
    try {
      return v_.evaluator(w);
    } catch (const std::exception& e) {
      throw Error(ErrorKind::EvaluatorUndefined,
                  "valuation '" + v_.label + "' undefined on '" +
                      v_.relative_character.presentation().display(w) + "': " + e.what());
    }
  }

  Rational chi(const Word& w) const { return v_.relative_character(w); }

  void check_a(const Word& g, AxiomReport& report) const {
    ++report.words_checked;
    ExtendedRational lhs = value(g.inverse());
    ExtendedRational rhs = value(g) + ExtendedRational(chi(g));
    if (!(lhs == rhs)) report.violations.push_back({'a', g, Word{}, lhs.to_string(), rhs.to_string()});
  }

  void check_b(const Word& g, const Word& h, AxiomReport& report) const {
    ++report.pairs_checked;
    ExtendedRational lhs = value(g * h);
    ExtendedRational rhs = min(value(g), value(h) - chi(g));
    if (lhs < rhs) report.violations.push_back({'b', g, h, lhs.to_string(), rhs.to_string()});
  }

  void trace(std::size_t depth, AxiomReport& report) const {
    report.witness_trace.clear();
    if (!v_.witness) {
      report.witnesses_in_kernel = false;
      report.trace_strictly_decreasing = false;
      return;
    }
    for (std::size_t k = 1; k <= depth; ++k) {
      Word w = v_.witness(static_cast<std::int64_t>(k));
      if (chi(w) != 0) report.witnesses_in_kernel = false;
      ExtendedRational x = value(w);
      if (!report.witness_trace.empty() &&
          (x.is_infinite() || !(x < report.witness_trace.back())))
        report.trace_strictly_decreasing = false;
      if (x.is_infinite()) report.trace_strictly_decreasing = false;
      report.witness_trace.push_back(std::move(x));
    }
    if (depth < 2) report.trace_strictly_decreasing = false;
  }

 private:
  const HnnValuation& v_;
};

}  // namespace

AxiomReport check_valuation_axioms(const HnnValuation& v, std::span<const Word> sample,
                                   std::size_t pair_budget, std::size_t witness_depth) {
  Checker c(v);
  AxiomReport report;
  for (const auto& g : sample) c.check_a(g, report);
  std::size_t done = 0;
  for (const auto& g : sample) {
    for (const auto& h : sample) {
      if (done == pair_budget) break;
      c.check_b(g, h, report);
      ++done;
    }
    if (done == pair_budget) break;
  }
  c.trace(witness_depth, report);
  sort_violations(report.violations);
  return report;
}

AxiomReport check_valuation_random(const HnnValuation& v, std::size_t max_length,
                                   std::size_t pairs, std::uint64_t seed,
                                   std::size_t witness_depth) {
  const std::size_t rank = v.relative_character.presentation().rank();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> length_dist(0, max_length);
  std::uniform_int_distribution<std::size_t> gen_dist(0, rank - 1);
  std::bernoulli_distribution sign_dist(0.5);
  auto random_word = [&] {
    std::size_t len = length_dist(rng);
    std::vector<Letter> letters;
    letters.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
      letters.push_back(Letter{gen_dist(rng), sign_dist(rng) ? 1 : -1});
    return Word(std::move(letters));
  };
  Checker c(v);
  AxiomReport report;
  for (std::size_t i = 0; i < pairs; ++i) {
    Word g = random_word();
    Word h = random_word();
    c.check_a(g, report);
    c.check_a(h, report);
    c.check_b(g, h, report);
  }
  c.trace(witness_depth, report);
  sort_violations(report.violations);
  return report;
}

HnnValuation bs_valuation(long n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "bs_valuation needs n >= 2");
  auto group = std::make_shared<const GroupPresentation>(GroupPresentation::from_text(
      {"a", "t"}, {"t a t^-1 a^-" + std::to_string(n)}));
  return bs_valuation(n, group, 0, 1);
}

HnnValuation bs_valuation(long n, std::shared_ptr<const GroupPresentation> group,
                          std::size_t a_index, std::size_t t_index, int t_sign) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "bs_valuation needs n >= 2");
  if (!group || group->rank() != 2 || a_index > 1 || t_index > 1 || a_index == t_index)
    throw Error(ErrorKind::InvalidArgument, "bs_valuation needs a two-generator presentation");
  std::vector<Rational> values(2, Rational(0));
  if (t_sign != 1 && t_sign != -1) throw Error(ErrorKind::InvalidArgument, "t_sign must be +1 or -1");
  values[t_index] = -t_sign;
  Character relative(group, std::move(values));
  // Map presentation letters onto the affine model's (a = 0, t = 1).
  auto to_model = [a_index, t_sign](const Word& w) {
    std::vector<Letter> out;
    for (const auto& l : w.letters())
      out.push_back(l.generator == a_index ? Letter{0u, l.exponent} : Letter{1u, l.exponent * t_sign});
    return Word(std::move(out));
  };
  HnnValuation v{"bs_valuation(" + std::to_string(n) + ")", std::move(relative), {}, {}};
  v.evaluator = [n, to_model](const Word& w) {
    return n_adic_valuation(affine_eval(n, to_model(w)).translation, n);
  };
  v.witness = [a_index, t_index, t_sign](std::int64_t k) {
    Word t = Word::generator(t_index, t_sign);
    return t.power(-k) * Word::generator(a_index, 1) * t.power(k);
  };
  return v;
}

SigmaFact valuation_fact(const HnnValuation& v, const AxiomReport& report) {
  Certificate cert;
  cert.kind = CertificateKind::ValuationWitness;
  cert.label = v.label;
  cert.axiom_report = report.summary();
  cert.note = "relative character " + v.relative_character.describe() +
              " cleared to coprime integers before comparison";
  SigmaFact fact{canonical_ray(v.relative_character), SigmaStatus::NotInSigma, cert,
                 "non-trivial HNN valuation '" + v.label + "' (axioms (a), (b) checked on " +
                     std::to_string(report.words_checked) + " words and " +
                     std::to_string(report.pairs_checked) + " pairs; witness trace to depth " +
                     std::to_string(report.witness_trace.size()) + ")"};
  validate_fact(fact);
  return fact;
}

}  // namespace bns
