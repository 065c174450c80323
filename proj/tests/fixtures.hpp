#pragma once

// Decompositions used across the hnn / inference / acceptance tests.

#include <random>

#include "bns/hnn.hpp"
#include "bns/oracle.hpp"

namespace testing {

// BS(1,n) = <a, t | t a t^-1 = a^n> over B = <a>.
inline bns::HnnDecomposition bs_decomposition(long n, bool with_oracles = true) {
  bns::HnnDecomposition h;
  h.family = "bs1" + std::to_string(n);
  h.base = bns::GroupPresentation({"a"}, {});
  if (with_oracles) h.base_oracle = bns::oracle_free_abelian({"a"});
  h.b1_generators = {bns::Word::generator(0)};
  h.b2_generators = {bns::Word::generator(0, n)};
  h.phi = {bns::Word::generator(0, n)};
  h.declared_b1_equals_base = bns::Tristate::True;
  h.declared_b2_equals_base = bns::Tristate::False;
  if (with_oracles) h.group_oracle = bns::bind_oracle(bns::oracle_bs(n), bns::build_group(h));
  return h;
}

// Z^2 as an HNN extension of <a> with phi = id.
inline bns::HnnDecomposition z2_decomposition() {
  bns::HnnDecomposition h;
  h.family = "z2";
  h.base = bns::GroupPresentation({"a"}, {});
  h.base_oracle = bns::oracle_free_abelian({"a"});
  h.b1_generators = {bns::Word::generator(0)};
  h.b2_generators = {bns::Word::generator(0)};
  h.phi = {bns::Word::generator(0)};
  h.declared_b1_equals_base = bns::Tristate::True;
  h.declared_b2_equals_base = bns::Tristate::True;
  return h;
}

// F2 = <a> * <t>: B1 = B2 = {1}.
inline bns::HnnDecomposition f2_decomposition() {
  bns::HnnDecomposition h;
  h.family = "f2";
  h.base = bns::GroupPresentation({"a"}, {});
  h.base_oracle = bns::oracle_free_abelian({"a"});
  return h;
}

// A random decomposition over B = Z^r (r = 1 or 2): B1 = <k_i e_i>,
// φ(k_i e_i) = column i of a random nonsingular integer matrix P, B2 = φ(B1).
// The expected class is read off from k and det P directly.
struct RandomDecomposition {
  bns::HnnDecomposition h;
  bns::HnnClass expected = bns::HnnClass::Neither;
};

inline RandomDecomposition random_decomposition(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rank_dist(1, 2), scale(1, 3), entry(-3, 3);
  std::bernoulli_distribution unit_scale(0.5), flip(0.5);
  const std::size_t r = rank_dist(rng);
  std::vector<std::string> gens = r == 1 ? std::vector<std::string>{"a"}
                                         : std::vector<std::string>{"a", "b"};
  std::vector<std::string> rels;
  if (r == 2) rels.push_back("a b a^-1 b^-1");
  std::vector<long> k(r);
  long det_k = 1;
  for (auto& x : k) {
    x = unit_scale(rng) ? 1 : scale(rng);
    det_k *= x;
  }
  std::vector<std::vector<long>> m;
  long det_m = 0;
  do {
    m.assign(r, std::vector<long>(r));
    for (auto& row : m)
      for (auto& x : row) x = entry(rng);
    // Bias towards unimodular maps so every class shows up.
    if (flip(rng)) {
      if (r == 1) m = {{flip(rng) ? 1 : -1}};
      else m = {{1, entry(rng)}, {0, flip(rng) ? 1 : -1}};
    }
    det_m = r == 1 ? m[0][0] : m[0][0] * m[1][1] - m[0][1] * m[1][0];
  } while (det_m == 0);

  auto vec_word = [&](const std::vector<long>& v) {
    std::vector<bns::Letter> letters;
    for (std::size_t i = 0; i < r; ++i)
      if (v[i] != 0) letters.push_back({i, v[i]});
    return bns::Word(std::move(letters));
  };
  RandomDecomposition out;
  bns::HnnDecomposition& h = out.h;
  h.family = "random";
  h.base = bns::GroupPresentation::from_text(gens, rels);
  h.base_oracle = bns::bind_oracle(bns::oracle_free_abelian(gens), h.base);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<long> src(r, 0);
    src[i] = k[i];
    std::vector<long> img(r, 0);
    for (std::size_t row = 0; row < r; ++row) img[row] = m[row][i];
    h.b1_generators.push_back(vec_word(src));
    h.phi.push_back(vec_word(img));
  }
  h.b2_generators = h.phi;
  const bool b1_full = det_k == 1;
  const bool b2_full = det_m == 1 || det_m == -1;
  if (b1_full && b2_full) out.expected = bns::HnnClass::NonProper;
  else if (b1_full) out.expected = bns::HnnClass::ProperlyDescending;
  else if (b2_full) out.expected = bns::HnnClass::ProperlyAscending;
  else out.expected = bns::HnnClass::Neither;
  return out;
}

inline bns::HnnClass flipped(bns::HnnClass c) {
  if (c == bns::HnnClass::ProperlyAscending) return bns::HnnClass::ProperlyDescending;
  if (c == bns::HnnClass::ProperlyDescending) return bns::HnnClass::ProperlyAscending;
  return c;
}

}  // namespace testing
