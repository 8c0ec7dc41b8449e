#pragma once
#include <functional>
#include <vector>

#include "roots.hpp"

namespace edrank {

// Value of a mod-p grading: coordinates reduced to [0, p).
struct GradingValue {
  std::vector<int> c;

  bool is_zero() const {
    for (int v : c) if (v != 0) return false;
    return true;
  }
  friend bool operator==(const GradingValue& a, const GradingValue& b) { return a.c == b.c; }
  friend bool operator!=(const GradingValue& a, const GradingValue& b) { return a.c != b.c; }
};

// A group grading of the lattice: an additive map onto F_p^d, split into two
// coordinate blocks of sizes d1 + d2 = d (the second block is empty except
// for the E6 family, where the two blocks carry different orbit constants).
struct Grading {
  long long p = 0;
  std::size_t d = 0;
  std::size_t d1 = 0, d2 = 0;
  std::function<GradingValue(const HalfIntVector&)> eval;
};

// true when the block (1 or 2) of the value has a nonzero entry
inline bool block_nonzero(const Grading& g, const GradingValue& v, int block) {
  std::size_t from = block == 1 ? 0 : g.d1;
  std::size_t to = block == 1 ? g.d1 : g.d;
  for (std::size_t i = from; i < to; ++i)
    if (v.c[i] != 0) return true;
  return false;
}

inline Grading build_grading(const LatticeDescriptor& lat) {
  Grading g;
  const Family f = lat.family;
  switch (f.tag) {
    case FamilyTag::PGL: {
      // x maps to sum of x_v * v over F_p^n
      g.p = f.p;
      g.d = static_cast<std::size_t>(f.n);
      g.d1 = g.d;
      g.d2 = 0;
      g.eval = [f, lat](const HalfIntVector& x) {
        if (!lattice_member(lat, x)) fail(Err::VectorOutsideLattice, x.str() + " is not a lattice member");
        const long long n = f.n, p = f.p;
        std::vector<long long> acc(static_cast<std::size_t>(n), 0);
        for (std::size_t pos = 0; pos < x.size(); ++pos) {
          long long xv = x.d[pos] / 2, label = static_cast<long long>(pos);
          for (long long digit = n - 1; digit >= 0; --digit) {
            acc[static_cast<std::size_t>(digit)] += xv * (label % p);
            label /= p;
          }
        }
        GradingValue v;
        for (long long i = 0; i < n; ++i)
          v.c.push_back(static_cast<int>(((acc[static_cast<std::size_t>(i)] % p) + p) % p));
        return v;
      };
      break;
    }
    case FamilyTag::PGO_PLUS: {
      long long r, m;
      two_adic_split(f.n, r, m);
      g.p = 2;
      g.d = static_cast<std::size_t>(r + m - 1);
      g.d1 = g.d;
      g.d2 = 0;
      g.eval = [f, lat, r, m](const HalfIntVector& x) {
        if (!lattice_member(lat, x)) fail(Err::VectorOutsideLattice, x.str() + " is not a lattice member");
        // first r coordinates: sum of x_{v,i} * v over F_2^r; remaining m-1:
        // the multiplicity of each block i = 1..m-1 mod 2 (the last block is
        // determined by the even total, dropping it is injective)
        std::vector<long long> acc(static_cast<std::size_t>(r + m), 0);
        for (std::size_t pos = 0; pos < x.size(); ++pos) {
          long long xv = x.d[pos] / 2;
          long long v = static_cast<long long>(pos) % (1ll << r);
          long long i = static_cast<long long>(pos) / (1ll << r);  // block index - 1
          for (long long b = 0; b < r; ++b) acc[static_cast<std::size_t>(b)] += xv * ((v >> (r - 1 - b)) & 1);
          acc[static_cast<std::size_t>(r + i)] += xv;
        }
        GradingValue out;
        for (long long b = 0; b < r; ++b) out.c.push_back(static_cast<int>(((acc[static_cast<std::size_t>(b)] % 2) + 2) % 2));
        for (long long i = 0; i + 1 < m; ++i) out.c.push_back(static_cast<int>(((acc[static_cast<std::size_t>(r + i)] % 2) + 2) % 2));
        return out;
      };
      break;
    }
    case FamilyTag::HSPIN16: {
      g.p = 2;
      g.d = 4;
      g.d1 = 4;
      g.d2 = 0;
      g.eval = [lat](const HalfIntVector& x) {
        if (!lattice_member(lat, x)) fail(Err::VectorOutsideLattice, x.str() + " is not a lattice member");
        // unique split x = d*nu + y with d in {0,1} and y integral
        int dpart = x.is_integral() ? 0 : 1;
        std::vector<long long> acc(3, 0);
        for (std::size_t pos = 0; pos < 8; ++pos) {
          long long yv = (x.d[pos] - dpart) / 2;
          for (long long b = 0; b < 3; ++b) acc[static_cast<std::size_t>(b)] += yv * ((static_cast<long long>(pos) >> (2 - b)) & 1);
        }
        GradingValue out;
        for (long long b = 0; b < 3; ++b) out.c.push_back(static_cast<int>(((acc[static_cast<std::size_t>(b)] % 2) + 2) % 2));
        out.c.push_back(dpart);
        return out;
      };
      break;
    }
    case FamilyTag::E6_ADJOINT: {
      g.p = 3;
      g.d = 2;
      g.d1 = 1;
      g.d2 = 1;
      g.eval = [lat](const HalfIntVector& x) {
        if (!lattice_member(lat, x)) fail(Err::VectorOutsideLattice, x.str() + " is not a lattice member");
        // basis order [a, b12, b21, b22, b31, b32]: (sum of b-coefficients, a-coefficient)
        long long asum = 0;
        for (std::size_t i = 1; i < 6; ++i) asum += x.d[i] / 2;
        long long dcoef = x.d[0] / 2;
        GradingValue out;
        out.c.push_back(static_cast<int>(((asum % 3) + 3) % 3));
        out.c.push_back(static_cast<int>(((dcoef % 3) + 3) % 3));
        return out;
      };
      break;
    }
    case FamilyTag::TOY_ZK:
      fail(Err::InvalidFamily, "the toy lattice has no pipeline grading");
  }
  return g;
}

struct CheckReport {
  bool passed = false;
  std::vector<HalfIntVector> offending;  // at most 20 are kept
  std::size_t checked = 0;
};

// every root must have nonzero grading
inline CheckReport check_condition_31(const RootSet& rs, const Grading& g) {
  CheckReport rep;
  for (const auto& r : rs.roots) {
    ++rep.checked;
    if (g.eval(r).is_zero() && rep.offending.size() < 20) rep.offending.push_back(r);
  }
  rep.passed = rep.offending.empty();
  return rep;
}

// the grading must map the lattice onto all of F_p^d: rank of the basis
// images over F_p equals d
inline bool check_surjectivity(const LatticeDescriptor& lat, const Grading& g) {
  const long long p = g.p;
  std::vector<std::vector<long long>> w;
  for (const auto& b : lat.ambient_basis) {
    GradingValue v = g.eval(b);
    w.emplace_back(v.c.begin(), v.c.end());
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < g.d && rank < w.size(); ++col) {
    std::size_t piv = rank;
    while (piv < w.size() && w[piv][col] % p == 0) ++piv;
    if (piv == w.size()) continue;
    std::swap(w[piv], w[rank]);
    // normalize pivot to 1 via modular inverse (p is prime)
    long long inv = 1, a = ((w[rank][col] % p) + p) % p;
    for (long long t = 1; t < p; ++t)
      if (a * t % p == 1) inv = t;
    for (auto& e : w[rank]) e = ((e * inv) % p + p) % p;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i == rank) continue;
      long long fct = ((w[i][col] % p) + p) % p;
      if (fct == 0) continue;
      for (std::size_t j = 0; j < g.d; ++j) w[i][j] = ((w[i][j] - fct * w[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank == g.d;
}

}  // namespace edrank
