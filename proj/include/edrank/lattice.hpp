#pragma once
#include <functional>
#include <string>
#include <vector>

#include "family.hpp"
#include "matrix.hpp"
#include "vec.hpp"

namespace edrank {

// A character lattice in explicit coordinates. Vectors live in the ambient
// coordinate space (dimension ambient_dim); membership cuts out the lattice
// itself. For the E6 family the ambient coordinates are simple-root
// coordinates, elsewhere they are the natural permutation coordinates.
struct LatticeDescriptor {
  Family family;
  std::size_t ambient_dim = 0;
  std::size_t rank = 0;
  std::vector<std::string> index_labels;      // one per ambient coordinate
  std::vector<HalfIntVector> ambient_basis;   // rank vectors spanning the lattice
};

inline bool lattice_member(const LatticeDescriptor& lat, const HalfIntVector& x) {
  if (x.size() != lat.ambient_dim) return false;
  switch (lat.family.tag) {
    case FamilyTag::PGL:
      return x.is_integral() && x.doubled_sum() == 0;
    case FamilyTag::PGO_PLUS:
      return x.is_integral() && x.doubled_sum() % 4 == 0;
    case FamilyTag::HSPIN16: {
      bool par = x.is_integral() || x.is_uniformly_half();
      long long s = x.doubled_sum();
      return par && ((s % 4) + 4) % 4 == 0;
    }
    case FamilyTag::E6_ADJOINT:
    case FamilyTag::TOY_ZK:
      return x.is_integral();
  }
  return false;
}

inline LatticeDescriptor build_lattice(const Family& f) {
  LatticeDescriptor lat;
  lat.family = f;
  auto unit = [](std::size_t dim, std::size_t i, long long val) {
    HalfIntVector v(dim);
    v.d[i] = val;
    return v;
  };
  switch (f.tag) {
    case FamilyTag::PGL: {
      const long long N = pgl_label_count(f);
      lat.ambient_dim = static_cast<std::size_t>(N);
      lat.rank = static_cast<std::size_t>(N - 1);
      for (long long v = 0; v < N; ++v) lat.index_labels.push_back(pgl_label(f, v));
      // chain e_i - e_{i+1} spans the sum-zero sublattice
      for (long long i = 0; i + 1 < N; ++i) {
        HalfIntVector b(lat.ambient_dim);
        b.d[static_cast<std::size_t>(i)] = 2;
        b.d[static_cast<std::size_t>(i + 1)] = -2;
        lat.ambient_basis.push_back(b);
      }
      break;
    }
    case FamilyTag::PGO_PLUS: {
      long long r, m;
      two_adic_split(f.n, r, m);
      lat.ambient_dim = static_cast<std::size_t>(f.n);
      lat.rank = static_cast<std::size_t>(f.n);
      for (long long pos = 0; pos < f.n; ++pos) lat.index_labels.push_back(pgo_label(r, pos));
      // e_0 + e_1 plus the difference chain spans the even-sum lattice
      HalfIntVector b0(lat.ambient_dim);
      b0.d[0] = 2;
      b0.d[1] = 2;
      lat.ambient_basis.push_back(b0);
      for (std::size_t i = 1; i < lat.ambient_dim; ++i) {
        HalfIntVector b(lat.ambient_dim);
        b.d[i] = 2;
        b.d[i - 1] = -2;
        lat.ambient_basis.push_back(b);
      }
      break;
    }
    case FamilyTag::HSPIN16: {
      lat.ambient_dim = 8;
      lat.rank = 8;
      for (long long v = 0; v < 8; ++v) lat.index_labels.push_back(f2_label(v, 3));
      // all-halves vector, e_0 + e_1, and the difference chain: spans the
      // even-sum lattice together with its half-shifted coset
      lat.ambient_basis.push_back(HalfIntVector({1, 1, 1, 1, 1, 1, 1, 1}));
      HalfIntVector b0(8);
      b0.d[0] = 2;
      b0.d[1] = 2;
      lat.ambient_basis.push_back(b0);
      for (std::size_t i = 1; i < 7; ++i) {
        HalfIntVector b(8);
        b.d[i] = 2;
        b.d[i - 1] = -2;
        lat.ambient_basis.push_back(b);
      }
      break;
    }
    case FamilyTag::E6_ADJOINT: {
      lat.ambient_dim = 6;
      lat.rank = 6;
      lat.index_labels = {"a", "b12", "b21", "b22", "b31", "b32"};
      for (std::size_t i = 0; i < 6; ++i) lat.ambient_basis.push_back(unit(6, i, 2));
      break;
    }
    case FamilyTag::TOY_ZK: {
      lat.ambient_dim = static_cast<std::size_t>(f.n);
      lat.rank = lat.ambient_dim;
      for (long long i = 0; i < f.n; ++i) lat.index_labels.push_back("z" + std::to_string(i));
      for (std::size_t i = 0; i < lat.ambient_dim; ++i) lat.ambient_basis.push_back(unit(lat.ambient_dim, i, 2));
      break;
    }
  }
  return lat;
}

// Enumerates every lattice member whose doubled coordinates lie in
// [-2*radius, 2*radius], in lexicographic order on doubled coordinates,
// restricted to a fixed value of the first coordinate (the scan parallelizes
// over first-coordinate stripes). The callback returns false to abort.
inline bool for_each_member_in_stripe(const LatticeDescriptor& lat, long long radius,
                                      long long first_doubled,
                                      const std::function<bool(const HalfIntVector&)>& fn) {
  const long long B = 2 * radius;
  const std::size_t dim = lat.ambient_dim;
  if (first_doubled < -B || first_doubled > B) return true;
  HalfIntVector x(dim);
  x.d[0] = first_doubled;

  const FamilyTag tag = lat.family.tag;
  // coordinate parity is uniform across a member: fixed by the first coordinate
  const long long parity = ((first_doubled % 2) + 2) % 2;
  if (parity == 1 && tag != FamilyTag::HSPIN16) return true;

  // last coordinate is solved from the running sum, not enumerated
  const bool constrained = tag == FamilyTag::PGL || tag == FamilyTag::PGO_PLUS || tag == FamilyTag::HSPIN16;

  std::function<bool(std::size_t, long long)> rec = [&](std::size_t i, long long sum) -> bool {
    if (constrained && i == dim - 1) {
      if (tag == FamilyTag::PGL) {
        long long last = -sum;
        if (last < -B || last > B) return true;
        x.d[i] = last;
        return fn(x);
      }
      // PGO and HSPIN16: doubled sum must vanish mod 4
      for (long long last = -B + parity; last <= B; last += 2) {
        if ((((sum + last) % 4) + 4) % 4 != 0) continue;
        x.d[i] = last;
        if (!fn(x)) return false;
      }
      return true;
    }
    if (i == dim) return fn(x);
    for (long long c = -B + parity; c <= B; c += 2) {
      x.d[i] = c;
      if (!rec(i + 1, sum + c)) return false;
    }
    return true;
  };
  return rec(1, first_doubled);
}

inline void for_each_member(const LatticeDescriptor& lat, long long radius,
                            const std::function<bool(const HalfIntVector&)>& fn) {
  for (long long c0 = -2 * radius; c0 <= 2 * radius; ++c0)
    if (!for_each_member_in_stripe(lat, radius, c0, fn)) return;
}

}  // namespace edrank
