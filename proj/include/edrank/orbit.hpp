#pragma once
#include <atomic>
#include <cstdlib>
#include <set>
#include <thread>

#include "grading.hpp"
#include "lattice.hpp"
#include "weyl.hpp"

namespace edrank {

struct OrbitReport {
  HalfIntVector seed;
  std::vector<HalfIntVector> orbit;  // sorted lex
  std::size_t orbit_size = 0;
  std::size_t stabilizer_order = 0;
};

inline OrbitReport orbit(const FiniteActionGroup& grp, const HalfIntVector& x) {
  OrbitReport r;
  r.seed = x;
  std::set<HalfIntVector> seen;
  for (const auto& el : grp.elements) {
    seen.insert(el.apply(x));
    if (el.fixes(x)) ++r.stabilizer_order;
  }
  r.orbit.assign(seen.begin(), seen.end());
  r.orbit_size = r.orbit.size();
  return r;
}

// All u in F_2^r whose label translation maps the position subset Y to
// itself. The returned count never exceeds |Y| for nonempty Y.
inline std::vector<long long> subset_translation_stabilizer(long long r,
                                                            const std::vector<long long>& y) {
  if (y.empty()) fail(Err::EmptySubset, "translation stabilizer of the empty subset");
  std::set<long long> set_y(y.begin(), y.end());
  const long long vcount = 1ll << r;
  std::vector<long long> out;
  for (long long u = 0; u < vcount; ++u) {
    bool ok = true;
    for (long long pos : set_y) {
      long long block = pos / vcount;
      long long v = pos % vcount;
      if (set_y.count(block * vcount + (v ^ u)) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(u);
  }
  return out;
}

struct ScanResult {
  long long radius = 0;
  int component = 1;
  bool second_component_pure = false;  // restrict to vectors with block one zero
  std::size_t min_orbit_size = 0;
  HalfIntVector witness;
  unsigned long long vectors_scanned = 0;
};

inline std::size_t scan_thread_count() {
  if (const char* env = std::getenv("EDRANK_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1 && v <= 64) return static_cast<std::size_t>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : std::min<std::size_t>(hc, 8);
}

// Minimum orbit size over lattice members in the coordinate box of the given
// radius whose grading is nonzero in the chosen block. Witness is the first
// minimizer in lexicographic order, independent of the worker count.
inline ScanResult min_orbit_scan(const FiniteActionGroup& grp, const LatticeDescriptor& lat,
                                 const Grading& g, int component, long long radius,
                                 bool pure_second = false) {
  if (radius < 1) fail(Err::InvalidFamilyParams, "scan radius must be at least 1");
  if (component != 1 && component != 2)
    fail(Err::InvalidFamilyParams, "scan component must be 1 or 2");
  if (component == 2 && g.d2 == 0)
    fail(Err::InvalidFamilyParams, "grading has no second block to scan");
  if (pure_second && component != 2)
    fail(Err::InvalidFamilyParams, "the pure variant only applies to the second block");

  std::vector<long long> stripes;
  for (long long c = -2 * radius; c <= 2 * radius; ++c) {
    if (lat.family.tag != FamilyTag::HSPIN16 && c % 2 != 0) continue;
    stripes.push_back(c);
  }

  struct StripeBest {
    bool any = false;
    std::size_t min_size = 0;
    HalfIntVector witness;
    unsigned long long scanned = 0;
  };
  std::vector<StripeBest> best(stripes.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      std::size_t si = next.fetch_add(1);
      if (si >= stripes.size()) return;
      StripeBest& sb = best[si];
      for_each_member_in_stripe(lat, radius, stripes[si], [&](const HalfIntVector& x) {
        GradingValue v = g.eval(x);
        if (!block_nonzero(g, v, component)) return true;
        if (pure_second && block_nonzero(g, v, 1)) return true;
        ++sb.scanned;
        std::size_t stab = 0;
        for (const auto& el : grp.elements)
          if (el.fixes(x)) ++stab;
        std::size_t osz = grp.order() / stab;
        if (!sb.any || osz < sb.min_size) {
          sb.any = true;
          sb.min_size = osz;
          sb.witness = x;
        }
        return true;
      });
    }
  };
  std::size_t nthreads = std::min(scan_thread_count(), stripes.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ScanResult res;
  res.radius = radius;
  res.component = component;
  res.second_component_pure = pure_second;
  for (const StripeBest& sb : best) {
    res.vectors_scanned += sb.scanned;
    if (sb.any && (res.min_orbit_size == 0 || sb.min_size < res.min_orbit_size)) {
      res.min_orbit_size = sb.min_size;
      res.witness = sb.witness;
    }
  }
  if (res.min_orbit_size == 0)
    fail(Err::PipelineConditionFailed, "scan found no vector with the required grading block");
  return res;
}

// The orbit-constant estimate: a p-generating invariant set meets every
// graded piece it generates, so its size is at least C1 d1 + C2 d2.
inline long long symrank_lower_bound(long long c1, long long c2, long long d1, long long d2) {
  if (d1 < 0 || d2 < 0) fail(Err::InvalidFamilyParams, "block dimensions must be nonnegative");
  if (d1 > 0 && c1 < 1)
    fail(Err::InvalidFamilyParams, "first block constant must be at least 1");
  if (d2 > 0 && c2 < 1)
    fail(Err::InvalidFamilyParams, "second block constant must be at least 1");
  return c1 * d1 + c2 * d2;
}

// Coordinates of x in the lattice basis; errors unless x is an integral
// combination of basis vectors.
inline std::vector<long long> basis_coordinates(const LatticeDescriptor& lat,
                                                const HalfIntVector& x) {
  if (x.size() != lat.ambient_dim)
    fail(Err::VectorOutsideLattice, "vector dimension does not match the lattice");
  IntMatrix a(lat.ambient_dim, lat.rank);
  std::vector<Int> b(lat.ambient_dim);
  for (std::size_t i = 0; i < lat.ambient_dim; ++i) {
    for (std::size_t j = 0; j < lat.rank; ++j) a.at(i, j) = to_int(lat.ambient_basis[j].d[i]);
    b[i] = to_int(x.d[i]);
  }
  auto sol = rational_solve(a, b);
  if (!sol) fail(Err::VectorOutsideLattice, x.str() + " is outside the lattice span");
  std::vector<long long> coords(lat.rank);
  for (std::size_t j = 0; j < lat.rank; ++j) {
    const Rat& q = (*sol)[j];
    if (q.get_den() != 1)
      fail(Err::VectorOutsideLattice, x.str() + " has fractional basis coordinates");
    coords[j] = q.get_num().get_si();
  }
  return coords;
}

struct GeneratingSetCertificate {
  std::vector<HalfIntVector> gamma;
  bool invariant = false;
  LatticeIndex index;
  long long p = 0;
  bool is_p_generating = false;
  std::size_t size = 0;
};

// Checks the two halves of the defining property: gamma setwise fixed by the
// group generators, and spanning a finite-index sublattice of index coprime
// to p. When both hold, |gamma| bounds the symmetric rank from above.
inline GeneratingSetCertificate check_generating_set(const FiniteActionGroup& grp,
                                                     const LatticeDescriptor& lat,
                                                     const std::vector<HalfIntVector>& gamma,
                                                     long long p) {
  GeneratingSetCertificate cert;
  cert.gamma = gamma;
  cert.p = p;
  cert.size = gamma.size();
  std::set<HalfIntVector> members(gamma.begin(), gamma.end());
  cert.invariant = true;
  for (const auto& gen : grp.generators)
    for (const auto& x : gamma)
      if (members.count(gen.apply(x)) == 0) cert.invariant = false;
  std::vector<HalfIntVector> coords;
  coords.reserve(gamma.size());
  for (const auto& x : gamma)
    coords.push_back(HalfIntVector::from_ints(basis_coordinates(lat, x)));
  cert.index = sublattice_index(lat.rank, coords);
  cert.is_p_generating = cert.index.finite && gcd(cert.index.index, to_int(p)) == 1;
  return cert;
}

// Invariant 2-generating set for the even orthogonal family built from orbits
// of coordinate pairs: one single-block pair orbit (size 2^{r+1}) per
// label-group basis vector and one cross-block pair orbit per extra odd
// block.  Cross-block supports have trivial translation stabilizer, so those
// orbits have size 2^{r+2}; the total is r*2^{r+1} + (m-1)*2^{r+2}.
inline std::vector<HalfIntVector> build_dn_remark_gamma(const LatticeDescriptor& lat,
                                                        const FiniteActionGroup& weps) {
  if (lat.family.tag != FamilyTag::PGO_PLUS)
    fail(Err::InvalidFamily, "the pair-orbit certificate belongs to the orthogonal family");
  long long r = 0, m = 0;
  two_adic_split(lat.family.n, r, m);
  if (r == 0) fail(Err::InvalidFamily, "the pair-orbit certificate needs 4 | n or a deeper 2-part");
  auto pair_vector = [&](long long v, long long i) {
    HalfIntVector x(lat.ambient_dim);
    x.d[static_cast<std::size_t>(pgo_pos(r, 0, 1))] += 2;
    x.d[static_cast<std::size_t>(pgo_pos(r, v, i))] += 2;
    return x;
  };
  std::vector<HalfIntVector> gamma;
  for (long long i = 1; i <= r; ++i) {
    OrbitReport rep = orbit(weps, pair_vector(1ll << (i - 1), 1));
    gamma.insert(gamma.end(), rep.orbit.begin(), rep.orbit.end());
  }
  for (long long j = 2; j <= m; ++j) {
    OrbitReport rep = orbit(weps, pair_vector(1, j));
    gamma.insert(gamma.end(), rep.orbit.begin(), rep.orbit.end());
  }
  std::sort(gamma.begin(), gamma.end());
  return gamma;
}

struct TranslationSumScan {
  long long radius = 0;
  std::size_t vectors_scanned = 0;
  std::size_t hypothesis_count = 0;
  std::size_t fixed_count = 0;
  std::size_t violations = 0;
  std::size_t excluded_witnesses = 0;
};

// Scans the full integer box of the projective family's ambient space and
// checks: whenever a vector with p odd, or with coordinate sum divisible by
// four, is fixed by a nonzero label translation, its weighted label sum
// sum_v x_v * v vanishes over F_p. violations counts failures (always zero);
// excluded_witnesses counts p = 2 vectors outside the parity hypothesis that
// are fixed with nonzero weighted sum, showing the hypothesis is not
// removable. Unused by any bound.
inline TranslationSumScan scan_translation_label_sums(const LatticeDescriptor& lat,
                                                      long long radius) {
  if (lat.family.tag != FamilyTag::PGL)
    fail(Err::InvalidFamily, "label translations exist only for the projective family");
  if (radius < 1) fail(Err::InvalidFamilyParams, "scan radius must be at least 1");
  const long long p = lat.family.p;
  const long long n = lat.family.n;
  const long long labels = static_cast<long long>(lat.ambient_dim);
  std::vector<std::vector<long long>> digit(labels, std::vector<long long>(n));
  for (long long v = 0; v < labels; ++v) {
    long long t = v;
    for (long long k = 0; k < n; ++k) {
      digit[v][k] = t % p;
      t /= p;
    }
  }
  std::vector<std::vector<int>> shift(labels, std::vector<int>(labels));
  for (long long u = 0; u < labels; ++u)
    for (long long v = 0; v < labels; ++v)
      shift[u][v] = static_cast<int>(pgl_add(lat.family, v, u));
  TranslationSumScan res;
  res.radius = radius;
  std::vector<long long> c(labels, -radius);
  for (;;) {
    res.vectors_scanned += 1;
    long long sum = 0;
    for (long long v = 0; v < labels; ++v) sum += c[v];
    bool hyp = (p % 2 == 1) || (((sum % 4) + 4) % 4 == 0);
    if (hyp) res.hypothesis_count += 1;
    bool fixed = false;
    for (long long u = 1; u < labels && !fixed; ++u) {
      bool ok = true;
      for (long long v = 0; v < labels; ++v)
        if (c[shift[u][v]] != c[v]) {
          ok = false;
          break;
        }
      fixed = ok;
    }
    if (fixed) {
      bool sum_zero = true;
      for (long long k = 0; k < n && sum_zero; ++k) {
        long long t = 0;
        for (long long v = 0; v < labels; ++v) t += c[v] * digit[v][k];
        if (((t % p) + p) % p != 0) sum_zero = false;
      }
      if (hyp) {
        res.fixed_count += 1;
        if (!sum_zero) res.violations += 1;
      } else if (!sum_zero) {
        res.excluded_witnesses += 1;
      }
    }
    long long k = 0;
    while (k < labels && c[k] == radius) c[k++] = -radius;
    if (k == labels) break;
    c[k] += 1;
  }
  return res;
}

enum class ToyStatus { EXACT_WITHIN_RADIUS };

struct ToyRankResult {
  std::size_t exact_min = 0;
  ToyStatus status = ToyStatus::EXACT_WITHIN_RADIUS;
};

// Exhaustive oracle for the symmetric rank on tiny lattices: the minimum
// cardinality of a p-generating union of orbits of box vectors under a Sylow
// p-subgroup of the acting group. Exact whenever the true optimum only uses
// vectors inside the scanned box.
inline ToyRankResult exact_symrank_toy(const FiniteActionGroup& grp, const LatticeDescriptor& lat,
                                       long long p, long long radius,
                                       std::size_t max_size = 16) {
  if (lat.rank > 4) fail(Err::BudgetExceeded, "exact oracle supports rank at most 4");
  if (grp.order() > 16) fail(Err::BudgetExceeded, "exact oracle supports group order at most 16");
  if (max_size > 16) fail(Err::BudgetExceeded, "exact oracle supports target size at most 16");
  FiniteActionGroup sp = sylow_subgroup(grp, p);

  std::vector<HalfIntVector> members;
  for_each_member(lat, radius, [&](const HalfIntVector& x) {
    if (!x.is_zero()) members.push_back(x);
    return true;
  });
  if (members.size() > 400) fail(Err::BudgetExceeded, "exact oracle box too large");

  struct Orb {
    std::vector<HalfIntVector> vecs;
    std::vector<HalfIntVector> coords;
  };
  std::vector<Orb> orbs;
  std::set<HalfIntVector> seen;
  for (const auto& x : members) {
    if (seen.count(x)) continue;
    OrbitReport rep = orbit(sp, x);
    Orb o;
    o.vecs = rep.orbit;
    for (const auto& y : o.vecs) {
      seen.insert(y);
      o.coords.push_back(HalfIntVector::from_ints(basis_coordinates(lat, y)));
    }
    orbs.push_back(std::move(o));
  }
  std::sort(orbs.begin(), orbs.end(),
            [](const Orb& a, const Orb& b) {
              if (a.vecs.size() != b.vecs.size()) return a.vecs.size() < b.vecs.size();
              return a.vecs.front() < b.vecs.front();
            });

  auto generates = [&](const std::vector<HalfIntVector>& coords) {
    LatticeIndex idx = sublattice_index(lat.rank, coords);
    return idx.finite && gcd(idx.index, to_int(p)) == 1;
  };

  unsigned long long nodes = 0;
  std::vector<HalfIntVector> chosen;
  std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t i,
                                                          std::size_t remaining) -> bool {
    if (++nodes > 2000000ull)
      fail(Err::BudgetExceeded, "exact oracle search exceeded the node budget");
    if (remaining == 0) return generates(chosen);
    if (i == orbs.size()) return false;
    if (orbs[i].vecs.size() <= remaining) {
      for (const auto& c : orbs[i].coords) chosen.push_back(c);
      if (dfs(i + 1, remaining - orbs[i].vecs.size())) return true;
      chosen.resize(chosen.size() - orbs[i].coords.size());
    }
    return dfs(i + 1, remaining);
  };

  for (std::size_t t = std::max<std::size_t>(lat.rank, 1); t <= max_size; ++t) {
    chosen.clear();
    if (dfs(0, t)) {
      ToyRankResult r;
      r.exact_min = t;
      return r;
    }
  }
  fail(Err::BudgetExceeded, "no p-generating union of orbits within the size cap");
}

}  // namespace edrank
