#include "bns/pipeline.hpp"

namespace bns {

namespace {

// a^e with e >= 2 over a one-generator base.
std::optional<long> power_of_a(const Word& w) {
  if (w.letters().size() != 1 || w.letters()[0].generator != 0) return std::nullopt;
  std::int64_t e = w.letters()[0].exponent;
  if (e < 2) return std::nullopt;
  return static_cast<long>(e);
}

}  // namespace

std::optional<BsShape> recognize_bs(const HnnDecomposition& h) {
  if (h.base.rank() != 1 || !h.base.relators().empty() || h.b1_generators.size() != 1)
    return std::nullopt;
  const Word a = Word::generator(0);
  BsShape shape;
  shape.a_index = 0;
  shape.t_index = 1;
  if (h.b1_generators[0] == a) {
    auto n = power_of_a(h.phi[0]);
    if (!n) return std::nullopt;
    shape.n = *n;
    shape.t_sign = h.orientation;
  } else if (h.phi[0] == a) {
    auto n = power_of_a(h.b1_generators[0]);
    if (!n) return std::nullopt;
    shape.n = *n;
    shape.t_sign = -h.orientation;
  } else {
    return std::nullopt;
  }
  return shape;
}

AxiomReport check_valuation(const HnnValuation& v, const AnalysisOptions& options) {
  const std::size_t rank = v.relative_character.presentation().rank();
  auto sample = all_reduced_words(rank, options.sample_length);
  AxiomReport report =
      check_valuation_axioms(v, sample, options.pair_budget, options.witness_depth);
  if (options.random_pairs > 0)
    report.merge(check_valuation_random(v, options.random_length, options.random_pairs,
                                        options.seed, options.witness_depth));
  return report;
}

Analysis analyze_decomposition(const HnnDecomposition& h, const GroupFlags& flags,
                               const AnalysisOptions& options) {
  Analysis a;
  a.flags = flags.normalized();
  const HnnDecomposition inverse = stable_letter_inverse(h, options.classify);
  for (const auto* reading : {&h, &inverse}) {
    CriterionResult r = brown_criterion(*reading, options.classify);
    a.store = add_criterion(a.store, *reading, r);
    a.readings.push_back(Reading{*reading, std::move(r)});
  }
  if (options.run_valuation) {
    if (auto shape = recognize_bs(h)) {
      HnnValuation v = bs_valuation(shape->n, build_group_ptr(h), shape->a_index, shape->t_index,
                                    shape->t_sign);
      a.valuation_report = check_valuation(v, options);
      if (a.valuation_report->pass()) {
        a.valuation_fact = valuation_fact(v, *a.valuation_report);
        a.store = a.store.add_fact(*a.valuation_fact);
      }
    }
  }
  a.verdicts = run_inference(a.store, a.flags);
  return a;
}

}  // namespace bns
