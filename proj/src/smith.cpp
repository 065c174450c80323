#include "bns/smith.hpp"

#include <optional>
#include <utility>

namespace bns {

BigMatrix to_big(const IntMatrix& m, std::size_t columns) {
  BigMatrix out(m.size(), std::vector<Integer>(columns, 0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < columns && j < m[i].size(); ++j)
      out[i][j] = static_cast<long>(m[i][j]);
  return out;
}

BigMatrix identity_matrix(std::size_t n) {
  BigMatrix id(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b, std::size_t inner_dim,
                   std::size_t cols) {
  BigMatrix out(a.size(), std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner_dim; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Integer determinant(const BigMatrix& square) {
  std::size_t n = square.size();
  if (n == 0) return 1;
  BigMatrix a = square;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

namespace {

struct Reducer {
  BigMatrix& a;
  BigMatrix& u;
  BigMatrix& v;
  std::size_t rows;
  std::size_t cols;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  }
  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < cols; ++c) a[i][c] += q * a[j][c];
    for (std::size_t c = 0; c < rows; ++c) u[i][c] += q * u[j][c];
  }
  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < rows; ++r) a[r][i] += q * a[r][j];
    for (std::size_t r = 0; r < cols; ++r) v[r][i] += q * v[r][j];
  }
  void negate_row(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  }

  // Moves the smallest nonzero |entry| of the trailing block to (t, t).
  bool place_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 &&
            (!best || abs(a[i][j]) < abs(a[best->first][best->second])))
          best = std::make_pair(i, j);
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  void reduce(std::size_t t) {
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        add_row(i, t, -q);
        if (a[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        add_col(j, t, -q);
        if (a[t][j] != 0) dirty = true;
      }
      if (dirty) {
        place_pivot(t);
        continue;
      }
      // Divisibility: pull any offending row into the pivot row.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < rows && !offender; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            offender = i;
            break;
          }
      if (!offender) break;
      add_row(t, *offender, Integer(1));
    }
    if (a[t][t] < 0) negate_row(t);
  }
};

}  // namespace

SmithForm smith_normal_form(const BigMatrix& m, std::size_t cols) {
  SmithForm s;
  s.rows = m.size();
  s.cols = cols;
  s.diagonal = m;
  for (auto& row : s.diagonal) row.resize(cols, 0);
  s.left = identity_matrix(s.rows);
  s.right = identity_matrix(s.cols);
  Reducer r{s.diagonal, s.left, s.right, s.rows, s.cols};
  std::size_t t = 0;
  while (t < s.rows && t < s.cols && r.place_pivot(t)) {
    r.reduce(t);
    ++t;
  }
  s.rank = t;
  return s;
}

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(diagonal[i][i]);
  return out;
}

AbelianizationData abelianization(const GroupPresentation& presentation) {
  AbelianizationData data;
  data.smith = smith_normal_form(to_big(exponent_matrix(presentation), presentation.rank()),
                                 presentation.rank());
  data.betti_number = presentation.rank() - data.smith.rank;
  for (const auto& d : data.smith.invariant_factors())
    if (d > 1) data.torsion_invariants.push_back(d);
  return data;
}

std::size_t betti_number(const GroupPresentation& presentation) {
  return abelianization(presentation).betti_number;
}

BigMatrix integer_left_kernel(const BigMatrix& m, std::size_t cols) {
  SmithForm s = smith_normal_form(m, cols);
  BigMatrix out;
  for (std::size_t i = s.rank; i < s.rows; ++i) out.push_back(s.left[i]);
  return out;
}

std::optional<std::vector<Integer>> solve_in_row_lattice(const BigMatrix& m,
                                                         std::size_t cols,
                                                         const std::vector<Integer>& target) {
  // x·M = b  ⇔  (x·U⁻¹)·D = b·V  with y = x·U⁻¹ free over ℤ.
  SmithForm s = smith_normal_form(m, cols);
  std::vector<Integer> bv(cols, 0);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t k = 0; k < cols; ++k) bv[j] += target[k] * s.right[k][j];
  std::vector<Integer> y(s.rows, 0);
  for (std::size_t j = 0; j < cols; ++j) {
    if (j < s.rank) {
      if (!mpz_divisible_p(bv[j].get_mpz_t(), s.diagonal[j][j].get_mpz_t()))
        return std::nullopt;
      y[j] = bv[j] / s.diagonal[j][j];
    } else if (bv[j] != 0) {
      return std::nullopt;
    }
  }
  // x = y·U
  std::vector<Integer> x(s.rows, 0);
  for (std::size_t i = 0; i < s.rows; ++i)
    for (std::size_t k = 0; k < s.rows; ++k) x[i] += y[k] * s.left[k][i];
  return x;
}

}  // namespace bns
