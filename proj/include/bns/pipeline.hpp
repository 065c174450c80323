#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bns/hnn.hpp"
#include "bns/inference.hpp"
#include "bns/valuation.hpp"

namespace bns {

// A decomposition that is visibly BS(1,n): one free base generator a,
// B1 = ⟨a⟩ with φ(a) = aⁿ, or the inverted reading B1 = ⟨aⁿ⟩, φ(aⁿ) = a.
// Generator t_index of build_group(h), raised to t_sign, satisfies
// t a t⁻¹ = aⁿ.
struct BsShape {
  long n = 2;
  std::size_t a_index = 0;
  std::size_t t_index = 1;
  int t_sign = 1;
};
std::optional<BsShape> recognize_bs(const HnnDecomposition& h);

struct AnalysisOptions {
  ClassifyOptions classify;
  bool run_valuation = true;
  std::size_t sample_length = 5;      // exhaustive sample: all words up to this length
  std::size_t pair_budget = 250000;   // ordered pairs from the exhaustive sample
  std::size_t random_pairs = 10000;
  std::size_t random_length = 8;
  std::uint64_t seed = 1;
  std::size_t witness_depth = 20;
};

struct Reading {
  HnnDecomposition decomposition;
  CriterionResult criterion;
};

struct Analysis {
  std::vector<Reading> readings;  // the file's reading, then its stable-letter inverse
  std::optional<AxiomReport> valuation_report;
  std::optional<SigmaFact> valuation_fact;  // only when the report passes
  FactStore store;
  GroupFlags flags;
  std::vector<Verdict> verdicts;
};

// Both readings through Brown's criterion, the BS valuation witness where
// it applies, then inference.
Analysis analyze_decomposition(const HnnDecomposition& h, const GroupFlags& flags,
                               const AnalysisOptions& options = {});

// Exhaustive sample plus seeded random pairs.
AxiomReport check_valuation(const HnnValuation& v, const AnalysisOptions& options);

}  // namespace bns
