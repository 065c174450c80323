#pragma once

// Shared helpers for the tests: seeded random words and a few independent
// reference implementations used as oracles.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bns/numeric.hpp"
#include "bns/word.hpp"

namespace testing {

inline bns::Word random_word(std::mt19937_64& rng, std::size_t rank, std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> len(0, max_length);
  std::uniform_int_distribution<std::size_t> gen(0, rank - 1);
  std::bernoulli_distribution sign(0.5);
  std::vector<bns::Letter> letters;
  std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) letters.push_back({gen(rng), sign(rng) ? 1 : -1});
  return bns::Word(std::move(letters));
}

// Letters one by one, without reduction, as (generator, ±1).
inline std::vector<std::pair<std::size_t, int>> spelled(const bns::Word& w) {
  std::vector<std::pair<std::size_t, int>> out;
  for (const auto& l : w.letters()) {
    int s = l.exponent > 0 ? 1 : -1;
    for (std::int64_t i = 0; i < (l.exponent > 0 ? l.exponent : -l.exponent); ++i)
      out.emplace_back(l.generator, s);
  }
  return out;
}

// BS(1,n) in the affine model, letter by letter with plain fractions:
// a is x ↦ x+1, t is x ↦ nx, a word acts right to left. Returns
// (scale, shift) of x ↦ scale·x + shift.
inline std::pair<bns::Rational, bns::Rational> reference_affine(long n, const bns::Word& w) {
  bns::Rational scale = 1, shift = 0;
  for (auto [g, s] : spelled(w)) {
    if (g == 0) {
      shift += scale * s;
    } else {
      scale *= s > 0 ? bns::Rational(n) : bns::Rational(1, n);
    }
  }
  return {scale, shift};
}

// Rank over ℚ by plain Gaussian elimination on fractions.
inline std::size_t rational_rank(std::vector<std::vector<bns::Rational>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      bns::Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// val_n(b) without prime factorizations: for each d ≤ 12 find the largest u
// with b^d / n^u still n-integral; val = max u/d. Exact whenever the true
// value has denominator ≤ 12.
inline bns::Rational brute_n_adic(const bns::Rational& b, long n) {
  bns::Rational best;
  bool have = false;
  for (long d = 1; d <= 12; ++d) {
    bns::Rational x = 1;
    for (long i = 0; i < d; ++i) x *= b;
    long u = 0;
    bns::Rational y = x;
    auto integral = [n](const bns::Rational& q) {
      bns::Integer den = q.get_den(), g;
      mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), bns::Integer(n).get_mpz_t());
      return g == 1;
    };
    if (integral(y)) {
      while (integral(y / n)) {
        y /= n;
        ++u;
      }
    } else {
      while (!integral(y)) {
        y *= n;
        --u;
      }
    }
    bns::Rational cand(u, d);
    cand.canonicalize();
    if (!have || cand > best) best = cand;
    have = true;
  }
  return best;
}

}  // namespace testing
