#pragma once
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "grading.hpp"
#include "group.hpp"
#include "lattice.hpp"
#include "roots.hpp"
#include "snf.hpp"

namespace edrank {

inline int popcount_ll(unsigned long long v) {
  int c = 0;
  while (v) {
    c += static_cast<int>(v & 1u);
    v >>= 1;
  }
  return c;
}

namespace detail {

inline void require_grading_preserved(const LatticeDescriptor& lat, const Grading& g,
                                      const FiniteActionGroup& grp) {
  for (const auto& el : grp.elements) {
    for (std::size_t j = 0; j < lat.rank; ++j) {
      const HalfIntVector& b = lat.ambient_basis[j];
      if (!(g.eval(el.apply(b)) == g.eval(b)))
        fail(Err::GradingNotPreserved,
             "constructed symmetry moves the grading of basis vector " + std::to_string(j));
    }
  }
}

}  // namespace detail

// Reflection in a root, packaged as an integer matrix on ambient coordinates.
inline GroupElement root_reflection_matrix(const IntMatrix& gram, const HalfIntVector& beta,
                                           std::size_t dim) {
  ActionMatrix m;
  m.n = dim;
  m.a.assign(dim * dim, 0);
  for (std::size_t j = 0; j < dim; ++j) {
    HalfIntVector unit(dim);
    unit.d[j] = 2;
    HalfIntVector img = reflect(gram, beta, unit);
    for (std::size_t i = 0; i < dim; ++i) {
      if (img.d[i] % 2 != 0)
        fail(Err::NotARoot, "reflection image of a unit vector is not integral");
      m.at(i, j) = img.d[i] / 2;
    }
  }
  return GroupElement{m};
}

// The two commuting symmetries generating the graded symmetry group of the
// rank-6 branched lattice: sigma multiplies the three arm rotations, tau
// cycles the arms, sending the far node of arm 3 to minus the highest root.
struct BranchedSymmetries {
  GroupElement sigma_arm[3];
  GroupElement sigma;
  GroupElement tau;
  HalfIntVector highest_root;
};

inline BranchedSymmetries build_e6_sigma_tau(const LatticeDescriptor& lat, const RootSet& rs) {
  if (lat.family.tag != FamilyTag::E6_ADJOINT)
    fail(Err::InvalidFamily, "branched symmetries exist only for the rank-6 lattice");
  const std::size_t dim = lat.ambient_dim;
  auto unit = [&](std::size_t j) {
    HalfIntVector v(dim);
    v.d[j] = 2;
    return v;
  };
  // basis order: center a, then arm nodes (near, far) = (b12,.), (b22, b21), (b32, b31);
  // arm 1 has its far node b11 = -theta outside the basis
  HalfIntVector theta = HalfIntVector::from_ints({3, 2, 1, 2, 1, 2});
  if (pairing(rs.gram, theta, theta) != 4)
    fail(Err::IdentityCheckFailed, "highest root candidate is not a root");
  HalfIntVector b11 = -theta;
  HalfIntVector arm_far[3] = {b11, unit(2), unit(4)};
  HalfIntVector arm_near[3] = {unit(1), unit(3), unit(5)};

  BranchedSymmetries out;
  out.highest_root = theta;
  for (int i = 0; i < 3; ++i) {
    GroupElement far = root_reflection_matrix(rs.gram, arm_far[i], dim);
    GroupElement near = root_reflection_matrix(rs.gram, arm_near[i], dim);
    out.sigma_arm[i] = compose(far, near);
  }
  out.sigma = compose(out.sigma_arm[0], compose(out.sigma_arm[1], out.sigma_arm[2]));

  //  tau: center fixed, arm i -> arm i+1, far node of arm 3 -> b11 = -theta
  {
    ActionMatrix m;
    m.n = dim;
    m.a.assign(dim * dim, 0);
    auto set_column = [&](std::size_t j, const HalfIntVector& img) {
      for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = img.d[i] / 2;
    };
    set_column(0, unit(0));      // a -> a
    set_column(1, unit(3));      // b12 -> b22
    set_column(3, unit(5));      // b22 -> b32
    set_column(5, unit(1));      // b32 -> b12
    set_column(2, unit(4));      // b21 -> b31
    set_column(4, b11);          // b31 -> b11
    out.tau = GroupElement{m};
  }

  // identity suite pinning the construction
  GroupElement id = GroupElement::matrix_identity(dim);
  auto same = [](const GroupElement& x, const GroupElement& y) { return x.key() == y.key(); };
  HalfIntVector a = unit(0);
  for (int i = 0; i < 3; ++i) {
    if (!(out.sigma_arm[i].apply(a) == a + arm_far[i] + arm_near[i]))
      fail(Err::IdentityCheckFailed, "arm rotation moves the center incorrectly");
    if (!(out.sigma.apply(arm_far[i]) == arm_near[i]))
      fail(Err::IdentityCheckFailed, "sigma must send each far node to the near node");
    if (!(out.sigma.apply(arm_near[i]) == -arm_far[i] - arm_near[i]))
      fail(Err::IdentityCheckFailed, "sigma must send each near node to minus the arm sum");
  }
  GroupElement s2 = compose(out.sigma, out.sigma);
  if (!same(compose(out.sigma, s2), id)) fail(Err::IdentityCheckFailed, "sigma cubed is not one");
  if (!same(compose(out.tau, compose(out.tau, out.tau)), id))
    fail(Err::IdentityCheckFailed, "tau cubed is not one");
  if (!same(compose(out.sigma, out.tau), compose(out.tau, out.sigma)))
    fail(Err::IdentityCheckFailed, "sigma and tau must commute");
  {
    // 1 + sigma + sigma^2 kills the whole space
    const ActionMatrix& s1 = out.sigma.matrix();
    const ActionMatrix& s2m = s2.matrix();
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        long long v = (i == j ? 1 : 0) + s1.at(i, j) + s2m.at(i, j);
        if (v != 0) fail(Err::IdentityCheckFailed, "1 + sigma + sigma^2 must vanish");
      }
  }
  if (closure(dim, {out.sigma, out.tau}).order() != 9)
    fail(Err::IdentityCheckFailed, "sigma and tau must generate a group of order 9");
  return out;
}

// The symmetry group preserving the grading, by closed form per family.
// Each element is checked against the grading on the lattice basis.
inline FiniteActionGroup build_w_eps(const LatticeDescriptor& lat, const Grading& g) {
  const Family& f = lat.family;
  FiniteActionGroup grp;
  grp.dim = lat.ambient_dim;
  switch (f.tag) {
    case FamilyTag::PGL: {
      // translations x -> x + u of the label group, one per label
      long long count = pgl_label_count(f);
      auto translation = [&](long long u) {
        SignedPerm s;
        s.perm.resize(static_cast<std::size_t>(count));
        s.signs.assign(static_cast<std::size_t>(count), 0);
        for (long long v = 0; v < count; ++v)
          s.perm[static_cast<std::size_t>(v)] = static_cast<int>(pgl_add(f, v, u));
        return GroupElement{s};
      };
      for (long long u = 0; u < count; ++u) grp.elements.push_back(translation(u));
      long long digit = 1;
      for (long long j = 0; j < f.n; ++j) {
        grp.generators.push_back(translation(digit));
        digit *= f.p;
      }
      break;
    }
    case FamilyTag::PGO_PLUS: {
      // label-group translations on block positions crossed with even sign flips
      long long r = 0, m = 0;
      two_adic_split(f.n, r, m);
      const std::size_t n = static_cast<std::size_t>(f.n);
      const unsigned long long vcount = 1ull << r;
      auto make = [&](unsigned long long u, unsigned long long mask) {
        SignedPerm s;
        s.perm.resize(n);
        s.signs.resize(n);
        for (long long i = 1; i <= m; ++i)
          for (unsigned long long v = 0; v < vcount; ++v) {
            std::size_t src = static_cast<std::size_t>(pgo_pos(r, static_cast<long long>(v), i));
            s.perm[src] = static_cast<int>(pgo_pos(r, static_cast<long long>(v ^ u), i));
            s.signs[src] = static_cast<unsigned char>((mask >> src) & 1u);
          }
        return GroupElement{s};
      };
      for (unsigned long long u = 0; u < vcount; ++u)
        for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
          if (popcount_ll(mask) % 2 != 0) continue;
          grp.elements.push_back(make(u, mask));
        }
      for (long long j = 0; j < r; ++j) grp.generators.push_back(make(1ull << j, 0));
      for (std::size_t k = 1; k < n; ++k)
        grp.generators.push_back(make(0, 1ull | (1ull << k)));
      break;
    }
    case FamilyTag::HSPIN16: {
      // translations of the 3-bit label cube crossed with sign flips that are
      // even and whose flipped labels sum to zero
      auto make = [&](unsigned long long u, unsigned long long mask) {
        SignedPerm s;
        s.perm.resize(8);
        s.signs.resize(8);
        for (unsigned long long v = 0; v < 8; ++v) {
          s.perm[v] = static_cast<int>(v ^ u);
          s.signs[v] = static_cast<unsigned char>((mask >> v) & 1u);
        }
        return GroupElement{s};
      };
      std::vector<unsigned long long> sign_masks;
      for (unsigned long long mask = 0; mask < 256; ++mask) {
        if (popcount_ll(mask) % 2 != 0) continue;
        unsigned long long acc = 0;
        for (unsigned long long v = 0; v < 8; ++v)
          if ((mask >> v) & 1u) acc ^= v;
        if (acc == 0) sign_masks.push_back(mask);
      }
      for (unsigned long long u = 0; u < 8; ++u)
        for (unsigned long long mask : sign_masks) grp.elements.push_back(make(u, mask));
      for (unsigned long long j = 0; j < 3; ++j) grp.generators.push_back(make(1ull << j, 0));
      for (unsigned long long mask : sign_masks)
        if (mask != 0) grp.generators.push_back(make(0, mask));
      break;
    }
    case FamilyTag::E6_ADJOINT: {
      RootSet rs = enumerate_roots(lat);
      BranchedSymmetries bs = build_e6_sigma_tau(lat, rs);
      FiniteActionGroup cl = closure(lat.ambient_dim, {bs.sigma, bs.tau});
      grp = cl;
      break;
    }
    default:
      fail(Err::InvalidFamily, "no closed-form symmetry group for this family");
  }
  sort_elements(grp.elements);
  detail::require_grading_preserved(lat, g, grp);
  return grp;
}

// The full graded stabilizer of the rank-6 lattice: the order-9 group above
// extends by the ratio of two arm rotations to the non-abelian exponent-3
// group of order 27. The pipeline itself never uses this group, the bound
// only needs the order-9 subgroup through rank monotonicity.
inline FiniteActionGroup build_e6_full_stabilizer(const LatticeDescriptor& lat,
                                                  const RootSet& rs, const Grading& g) {
  BranchedSymmetries bs = build_e6_sigma_tau(lat, rs);
  GroupElement rho =
      compose(bs.sigma_arm[0], compose(bs.sigma_arm[1], bs.sigma_arm[1]));
  FiniteActionGroup grp = closure(lat.ambient_dim, {bs.sigma, bs.tau, rho});
  if (grp.order() != 27)
    fail(Err::IdentityCheckFailed, "full graded stabilizer must have order 27");
  detail::require_grading_preserved(lat, g, grp);
  return grp;
}

enum class BruteForceStatus { OK, SKIPPED, TOO_LARGE };

struct BruteForceResult {
  BruteForceStatus status = BruteForceStatus::SKIPPED;
  unsigned long long ambient_size = 0;
  FiniteActionGroup group;
};

// Enumerate the full ambient Weyl group and keep the elements preserving the
// grading on the lattice basis. Level 0 skips, level 1 allows 1e5 ambient
// elements, level 2 allows 1e7.
inline BruteForceResult brute_force_w_eps(const LatticeDescriptor& lat, const Grading& g,
                                          int level) {
  BruteForceResult res;
  if (level <= 0) return res;
  const unsigned long long budget = level == 1 ? 100000ull : 10000000ull;
  const std::size_t dim = lat.ambient_dim;

  auto preserves = [&](const GroupElement& el) {
    for (std::size_t j = 0; j < lat.rank; ++j) {
      const HalfIntVector& b = lat.ambient_basis[j];
      if (!(g.eval(el.apply(b)) == g.eval(b))) return false;
    }
    return true;
  };

  auto factorial = [](unsigned long long k) {
    unsigned long long r = 1;
    for (unsigned long long i = 2; i <= k; ++i) r *= i;
    return r;
  };

  switch (lat.family.tag) {
    case FamilyTag::PGL: {
      // ambient group: all permutations of the labels
      res.ambient_size = factorial(dim);
      if (res.ambient_size > budget) {
        res.status = BruteForceStatus::TOO_LARGE;
        return res;
      }
      std::vector<int> perm(dim);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        SignedPerm s;
        s.perm = perm;
        s.signs.assign(dim, 0);
        GroupElement el{s};
        if (preserves(el)) res.group.elements.push_back(el);
      } while (std::next_permutation(perm.begin(), perm.end()));
      break;
    }
    case FamilyTag::PGO_PLUS:
    case FamilyTag::HSPIN16: {
      // ambient group: permutations of positions with evenly many sign flips
      res.ambient_size = factorial(dim) << (dim - 1);
      if (res.ambient_size > budget) {
        res.status = BruteForceStatus::TOO_LARGE;
        return res;
      }
      std::vector<int> perm(dim);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        for (unsigned long long mask = 0; mask < (1ull << dim); ++mask) {
          if (popcount_ll(mask) % 2 != 0) continue;
          SignedPerm s;
          s.perm = perm;
          s.signs.resize(dim);
          for (std::size_t k = 0; k < dim; ++k)
            s.signs[k] = static_cast<unsigned char>((mask >> k) & 1u);
          GroupElement el{s};
          if (preserves(el)) res.group.elements.push_back(el);
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      break;
    }
    case FamilyTag::E6_ADJOINT: {
      // ambient group: closure of the reflections in the six basis roots
      RootSet rs = enumerate_roots(lat);
      std::vector<GroupElement> gens;
      for (std::size_t j = 0; j < dim; ++j) {
        HalfIntVector unit(dim);
        unit.d[j] = 2;
        gens.push_back(root_reflection_matrix(rs.gram, unit, dim));
      }
      FiniteActionGroup ambient;
      if (!try_closure(dim, gens, budget, ambient)) {
        res.ambient_size = budget + 1;
        res.status = BruteForceStatus::TOO_LARGE;
        return res;
      }
      res.ambient_size = ambient.order();
      for (const auto& el : ambient.elements)
        if (preserves(el)) res.group.elements.push_back(el);
      break;
    }
    default:
      fail(Err::InvalidFamily, "no ambient Weyl group for this family");
  }
  res.status = BruteForceStatus::OK;
  res.group.dim = dim;
  sort_elements(res.group.elements);
  res.group.generators = res.group.elements;
  return res;
}

// Rank of the fixed sublattice of the generated group: lattice rank minus the
// rank of the stacked images (g - 1) b over generators g and basis vectors b.
inline std::size_t fixed_subspace_rank(const LatticeDescriptor& lat,
                                       const std::vector<GroupElement>& gens) {
  if (gens.empty()) return lat.rank;
  const std::size_t dim = lat.ambient_dim;
  IntMatrix stacked(gens.size() * dim, lat.rank);
  for (std::size_t gi = 0; gi < gens.size(); ++gi)
    for (std::size_t j = 0; j < lat.rank; ++j) {
      const HalfIntVector& b = lat.ambient_basis[j];
      HalfIntVector img = gens[gi].apply(b);
      for (std::size_t i = 0; i < dim; ++i)
        stacked.at(gi * dim + i, j) = to_int(img.d[i] - b.d[i]);
    }
  std::size_t moved = int_rank(stacked);
  return lat.rank - moved;
}

}  // namespace edrank
