#pragma once
#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"

namespace edrank {

struct SnfResult {
  // full diagonal of length min(rows, cols): nonzero prefix with d1 | d2 | ...,
  // then zeros
  std::vector<Int> invariant_factors;
  std::size_t rank = 0;
};

namespace detail {

// Diagonalizes m in place by unimodular row/column operations. If right is
// non-null it starts as the identity and accumulates the column operations,
// so kernel vectors can be read off its trailing columns.
inline void snf_in_place(IntMatrix& m, IntMatrix* right) {
  const std::size_t R = m.rows, C = m.cols;
  auto swap_rows = [&](std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < C; ++j) std::swap(m.at(i, j), m.at(k, j));
  };
  auto swap_cols = [&](std::size_t j, std::size_t k) {
    for (std::size_t i = 0; i < R; ++i) std::swap(m.at(i, j), m.at(i, k));
    if (right)
      for (std::size_t i = 0; i < right->rows; ++i) std::swap(right->at(i, j), right->at(i, k));
  };
  auto row_submul = [&](std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t j = 0; j < C; ++j) m.at(dst, j) -= q * m.at(src, j);
  };
  auto col_submul = [&](std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t i = 0; i < R; ++i) m.at(i, dst) -= q * m.at(i, src);
    if (right)
      for (std::size_t i = 0; i < right->rows; ++i) right->at(i, dst) -= q * right->at(i, src);
  };
  auto row_add = [&](std::size_t dst, std::size_t src) {
    for (std::size_t j = 0; j < C; ++j) m.at(dst, j) += m.at(src, j);
  };

  const std::size_t n = std::min(R, C);
  for (std::size_t t = 0; t < n; ++t) {
    // smallest-magnitude nonzero pivot, lowest (i, j) on ties: deterministic
    std::size_t pi = R, pj = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j) {
        if (m.at(i, j) == 0) continue;
        if (pi == R || mpz_cmpabs(m.at(i, j).get_mpz_t(), m.at(pi, pj).get_mpz_t()) < 0) {
          pi = i;
          pj = j;
        }
      }
    if (pi == R) break;
    if (pi != t) swap_rows(t, pi);
    if (pj != t) swap_cols(t, pj);

    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (m.at(i, t) == 0) continue;
        Int q = m.at(i, t) / m.at(t, t);  // truncated, leaves |rem| < |pivot|
        if (q != 0) row_submul(i, t, q);
        if (m.at(i, t) != 0) {
          swap_rows(t, i);
          again = true;
        }
      }
      if (again) continue;
      for (std::size_t j = t + 1; j < C; ++j) {
        if (m.at(t, j) == 0) continue;
        Int q = m.at(t, j) / m.at(t, t);
        if (q != 0) col_submul(j, t, q);
        if (m.at(t, j) != 0) {
          swap_cols(t, j);
          again = true;
        }
      }
      if (again) continue;
      // the pivot must divide the rest of the submatrix for the chain property
      for (std::size_t i = t + 1; i < R && !again; ++i)
        for (std::size_t j = t + 1; j < C && !again; ++j)
          if (m.at(i, j) % m.at(t, t) != 0) {
            row_add(t, i);
            again = true;
          }
    }
    if (m.at(t, t) < 0)
      for (std::size_t j = 0; j < C; ++j) m.at(t, j) = -m.at(t, j);
  }
}

}  // namespace detail

inline SnfResult snf(IntMatrix m) {
  detail::snf_in_place(m, nullptr);
  SnfResult r;
  const std::size_t n = std::min(m.rows, m.cols);
  for (std::size_t t = 0; t < n; ++t) {
    r.invariant_factors.push_back(m.at(t, t));
    if (m.at(t, t) != 0) r.rank = t + 1;
  }
  return r;
}

inline std::size_t int_rank(const IntMatrix& m) { return snf(m).rank; }

// Basis of the integer kernel {x : m x = 0} as a saturated sublattice of
// Z^cols. Columns of the accumulated right transform that map to zero
// invariant factors form the basis; the transform is unimodular, so the
// result is automatically saturated.
inline std::vector<std::vector<Int>> integer_kernel(IntMatrix m) {
  IntMatrix v = IntMatrix::identity(m.cols);
  const std::size_t cols = m.cols;
  detail::snf_in_place(m, &v);
  std::size_t rank = 0;
  for (std::size_t t = 0; t < std::min(m.rows, m.cols); ++t)
    if (m.at(t, t) != 0) rank = t + 1;
  std::vector<std::vector<Int>> basis;
  for (std::size_t j = rank; j < cols; ++j) {
    std::vector<Int> k(cols);
    for (std::size_t i = 0; i < cols; ++i) k[i] = v.at(i, j);
    // sign-normalize for stable output
    for (const Int& c : k)
      if (c != 0) {
        if (c < 0)
          for (Int& x : k) x = -x;
        break;
      }
    basis.push_back(std::move(k));
  }
  return basis;
}

struct LatticeIndex {
  bool finite = false;
  Int index = 0;  // meaningful only when finite
};

// Index in Z^ambient_rank of the sublattice generated by gens. Generators
// must be integral vectors of the ambient dimension.
inline LatticeIndex sublattice_index(std::size_t ambient_rank,
                                     const std::vector<HalfIntVector>& gens) {
  IntMatrix m(gens.size(), ambient_rank);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].size() != ambient_rank)
      fail(Err::GeneratorOutsideLattice, "generator has dimension " +
                                             std::to_string(gens[i].size()) + ", ambient is " +
                                             std::to_string(ambient_rank));
    if (!gens[i].is_integral())
      fail(Err::GeneratorOutsideLattice, "generator " + gens[i].str() + " is not integral");
    for (std::size_t j = 0; j < ambient_rank; ++j) m.at(i, j) = to_int(gens[i].d[j] / 2);
  }
  SnfResult s = snf(std::move(m));
  LatticeIndex r;
  if (s.rank < ambient_rank) return r;  // infinite index
  r.finite = true;
  r.index = 1;
  for (const Int& d : s.invariant_factors) r.index *= d;
  return r;
}

// Exact solve of A x = b over the rationals by Gaussian elimination.
// Returns nullopt when the system is inconsistent; A must have full column
// rank for the solution to be unique (all uses here satisfy that).
inline std::optional<std::vector<Rat>> rational_solve(const IntMatrix& a,
                                                      const std::vector<Int>& b) {
  const std::size_t R = a.rows, C = a.cols;
  std::vector<std::vector<Rat>> w(R, std::vector<Rat>(C + 1));
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) w[i][j] = a.at(i, j);
    w[i][C] = b[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t p = row;
    while (p < R && w[p][col] == 0) ++p;
    if (p == R) continue;
    std::swap(w[p], w[row]);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row || w[i][col] == 0) continue;
      Rat f = w[i][col] / w[row][col];
      for (std::size_t j = col; j <= C; ++j) w[i][j] -= f * w[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < R; ++i)
    if (w[i][C] != 0) return std::nullopt;
  std::vector<Rat> x(C, Rat(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i)
    x[pivot_col[i]] = w[i][C] / w[i][pivot_col[i]];
  return x;
}

}  // namespace edrank
