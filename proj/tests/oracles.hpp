#pragma once
// Independent reference computations used to pin expected values in the test
// suites. Everything here is deliberately naive: cofactor determinants,
// fundamental-box coset counting, plain rational elimination. None of it
// shares code with the library implementations it checks.
#include <edrank/matrix.hpp>

#include <cstdlib>
#include <vector>

namespace oracle {

using edrank::Int;
using edrank::IntMatrix;
using edrank::Rat;

// determinant by cofactor expansion along the first row
inline Int det_cofactor(const IntMatrix& m) {
  if (m.rows != m.cols) std::abort();
  const std::size_t n = m.rows;
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  Int det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(i - 1, cc++) = m.at(i, c);
      }
    }
    Int term = m.at(0, j) * det_cofactor(minor);
    if (j % 2 == 0) det += term;
    else det -= term;
  }
  return det;
}

// rank over Q by fraction elimination
inline std::size_t rank_over_q(const IntMatrix& m) {
  std::vector<std::vector<Rat>> w(m.rows, std::vector<Rat>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) w[i][j] = m.at(i, j);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t p = rank;
    while (p < m.rows && w[p][col] == 0) ++p;
    if (p == m.rows) continue;
    std::swap(w[p], w[rank]);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == rank || w[i][col] == 0) continue;
      Rat f = w[i][col] / w[rank][col];
      for (std::size_t j = col; j < m.cols; ++j) w[i][j] -= f * w[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Membership of an integer point in the lattice spanned by the rows of a
// nonsingular square generator matrix, decided by Cramer's rule: the point is
// in the lattice iff every Cramer numerator is divisible by det.
inline bool in_row_lattice(const IntMatrix& gens, const std::vector<Int>& x, const Int& det) {
  const std::size_t n = gens.rows;
  // solve c * gens = x, i.e. gens^T c = x
  for (std::size_t k = 0; k < n; ++k) {
    IntMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t.at(i, j) = (j == k) ? x[i] : gens.at(j, i);
    if (det_cofactor(t) % det != 0) return false;
  }
  return true;
}

// Coset count of the row lattice of a nonsingular square generator matrix in
// Z^n: find the smallest period n_i of each axis, then count lattice points
// inside the resulting fundamental box. index = (prod n_i) / count.
inline Int index_by_counting(const IntMatrix& gens) {
  const std::size_t n = gens.rows;
  Int det = det_cofactor(gens);
  if (det == 0) std::abort();
  std::vector<long long> period(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (long long k = 1;; ++k) {
      std::vector<Int> x(n, 0);
      x[i] = edrank::to_int(k);
      if (in_row_lattice(gens, x, det)) {
        period[i] = k;
        break;
      }
    }
  }
  Int box = 1;
  for (long long p : period) box *= edrank::to_int(p);
  Int hits = 0;
  std::vector<Int> x(n, 0);
  std::vector<long long> idx(n, 0);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = edrank::to_int(idx[i]);
    if (in_row_lattice(gens, x, det)) ++hits;
    std::size_t i = 0;
    while (i < n && ++idx[i] == period[i]) idx[i++] = 0;
    if (i == n) break;
  }
  return box / hits;
}

}  // namespace oracle
