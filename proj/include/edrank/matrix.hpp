#pragma once
#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "vec.hpp"

namespace edrank {

using Int = mpz_class;
using Rat = mpq_class;

// gmpxx has no long long overloads; long is 64-bit on every target we build
inline Int to_int(long long v) { return Int(static_cast<long>(v)); }

// Dense row-major matrix with arbitrary-precision integer entries.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  // rows are the doubled coordinates of the given vectors
  static IntMatrix from_doubled_rows(const std::vector<HalfIntVector>& vs) {
    IntMatrix m(vs.size(), vs.empty() ? 0 : vs[0].size());
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = to_int(vs[i].d[j]);
    return m;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k) {
        const Int& v = x.at(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
      }
    return z;
  }

  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

}  // namespace edrank
