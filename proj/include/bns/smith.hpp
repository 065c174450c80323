#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bns/numeric.hpp"
#include "bns/presentation.hpp"

namespace bns {

using BigMatrix = std::vector<std::vector<Integer>>;

BigMatrix to_big(const IntMatrix& m, std::size_t columns);
BigMatrix identity_matrix(std::size_t n);
BigMatrix multiply(const BigMatrix& a, const BigMatrix& b, std::size_t inner_dim,
                   std::size_t cols);
// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const BigMatrix& square);

// Smith normal form U·M·V = D of an integer matrix. D is stored with the
// shape of M; U and V are unimodular.
struct SmithForm {
  std::size_t rows = 0;
  std::size_t cols = 0;
  BigMatrix left;      // U, rows × rows
  BigMatrix diagonal;  // D, rows × cols
  BigMatrix right;     // V, cols × cols
  std::size_t rank = 0;

  // d_1, ..., d_rank (all positive, each dividing the next).
  std::vector<Integer> invariant_factors() const;
};

SmithForm smith_normal_form(const BigMatrix& m, std::size_t cols);

struct AbelianizationData {
  std::size_t betti_number = 0;
  std::vector<Integer> torsion_invariants;  // entries ≥ 2, divisibility chain
  SmithForm smith;
};

AbelianizationData abelianization(const GroupPresentation& presentation);
std::size_t betti_number(const GroupPresentation& presentation);

// Left kernel basis {x : x·M = 0} over ℤ, read off the Smith transform.
BigMatrix integer_left_kernel(const BigMatrix& m, std::size_t cols);

// Solves x·M = target over ℤ; nullopt when target is outside the row lattice.
std::optional<std::vector<Integer>> solve_in_row_lattice(const BigMatrix& m,
                                                         std::size_t cols,
                                                         const std::vector<Integer>& target);

}  // namespace bns
