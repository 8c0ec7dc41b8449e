#pragma once
#include <algorithm>
#include <set>
#include <vector>

#include "lattice.hpp"

namespace edrank {

// Root datum in ambient coordinates. The gram matrix pairs ambient
// coordinate directions in the doubled convention: twice the geometric
// pairing, so simply-laced roots have self-pairing 4.
struct RootSet {
  std::vector<HalfIntVector> roots;  // sorted lexicographically
  IntMatrix gram;
};

// doubled pairing of two vectors: 2 * (x . y); exact for lattice vectors
inline Int pairing(const IntMatrix& gram, const HalfIntVector& x, const HalfIntVector& y) {
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.d[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y.d[j] == 0) continue;
      s += to_int(x.d[i]) * gram.at(i, j) * to_int(y.d[j]);
    }
  }
  // the raw sum carries the two doublings of the coordinates on top of the
  // doubled gram; lattice vectors always divide out exactly
  if (s % 4 != 0) fail(Err::VectorOutsideLattice, "pairing is not integral in the doubled convention");
  return s / 4;
}

// x - <x, beta^vee> beta for a simply-laced root beta
inline HalfIntVector reflect(const IntMatrix& gram, const HalfIntVector& beta,
                             const HalfIntVector& x) {
  if (pairing(gram, beta, beta) != 4)
    fail(Err::NotARoot, "reflection axis " + beta.str() + " has self-pairing != 4");
  Int c2 = pairing(gram, x, beta);  // = 2 (x . beta) = 2 <x, beta^vee>
  if (c2 % 2 != 0) fail(Err::VectorOutsideLattice, "coroot pairing of " + x.str() + " is not integral");
  long long c = Int(c2 / 2).get_si();
  HalfIntVector y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y.d[i] -= c * beta.d[i];
  return y;
}

inline IntMatrix e6_gram() {
  // doubled Cartan pairing of the basis [a, b12, b21, b22, b31, b32]:
  // a adjoins each b_i2, b_i2 adjoins b_i1
  IntMatrix g(6, 6);
  for (std::size_t i = 0; i < 6; ++i) g.at(i, i) = 4;
  auto link = [&](std::size_t i, std::size_t j) {
    g.at(i, j) = -2;
    g.at(j, i) = -2;
  };
  link(0, 1);  // a -- b12
  link(0, 3);  // a -- b22
  link(0, 5);  // a -- b32
  link(3, 2);  // b22 -- b21
  link(5, 4);  // b32 -- b31
  return g;
}

inline RootSet enumerate_roots(const LatticeDescriptor& lat) {
  RootSet rs;
  const std::size_t dim = lat.ambient_dim;
  switch (lat.family.tag) {
    case FamilyTag::PGL: {
      rs.gram = IntMatrix::identity(dim);
      for (std::size_t i = 0; i < dim; ++i) rs.gram.at(i, i) = 2;
      for (std::size_t u = 0; u < dim; ++u)
        for (std::size_t v = 0; v < dim; ++v) {
          if (u == v) continue;
          HalfIntVector r(dim);
          r.d[u] = 2;
          r.d[v] = -2;
          rs.roots.push_back(r);
        }
      break;
    }
    case FamilyTag::PGO_PLUS:
    case FamilyTag::HSPIN16: {
      rs.gram = IntMatrix::identity(dim);
      for (std::size_t i = 0; i < dim; ++i) rs.gram.at(i, i) = 2;
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t s = k + 1; s < dim; ++s)
          for (int sk = -1; sk <= 1; sk += 2)
            for (int ss = -1; ss <= 1; ss += 2) {
              HalfIntVector r(dim);
              r.d[k] = 2 * sk;
              r.d[s] = 2 * ss;
              rs.roots.push_back(r);
            }
      break;
    }
    case FamilyTag::E6_ADJOINT: {
      rs.gram = e6_gram();
      // reflection closure of the simple roots
      std::vector<HalfIntVector> simple;
      for (std::size_t i = 0; i < 6; ++i) {
        HalfIntVector r(6);
        r.d[i] = 2;
        simple.push_back(r);
      }
      std::set<HalfIntVector> seen(simple.begin(), simple.end());
      std::vector<HalfIntVector> queue = simple;
      while (!queue.empty()) {
        HalfIntVector x = queue.back();
        queue.pop_back();
        for (const auto& s : simple) {
          HalfIntVector y = reflect(rs.gram, s, x);
          if (seen.insert(y).second) queue.push_back(y);
        }
      }
      rs.roots.assign(seen.begin(), seen.end());
      break;
    }
    case FamilyTag::TOY_ZK:
      fail(Err::InvalidFamily, "the toy lattice has no root datum");
  }
  std::sort(rs.roots.begin(), rs.roots.end());
  return rs;
}

}  // namespace edrank
