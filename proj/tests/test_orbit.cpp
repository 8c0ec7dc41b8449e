#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "edrank/orbit.hpp"

using namespace edrank;

namespace {

// mod-p coordinate grading for the plain integer lattices used by the oracle
Grading toy_grading(const LatticeDescriptor& lat, long long p) {
  Grading g;
  g.p = p;
  g.d = lat.rank;
  g.d1 = lat.rank;
  g.d2 = 0;
  g.eval = [p](const HalfIntVector& x) {
    GradingValue v;
    v.c.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      v.c[i] = static_cast<int>((((x.d[i] / 2) % p) + p) % p);
    return v;
  };
  return g;
}

GroupElement swap01_dim2() { return GroupElement{SignedPerm{{1, 0}, {0, 0}}}; }
GroupElement negation_dim2() { return GroupElement{SignedPerm{{0, 1}, {1, 1}}}; }

}  // namespace

TEST_CASE("orbits and stabilizers") {
  {
    LatticeDescriptor lat = build_lattice(pgl_family(2, 2));
    FiniteActionGroup grp = build_w_eps(lat, build_grading(lat));
    HalfIntVector x = HalfIntVector::from_ints({1, -1, 0, 0});
    OrbitReport rep = orbit(grp, x);
    CHECK(rep.orbit_size == 4);
    CHECK(rep.stabilizer_order == 1);
  }
  {
    LatticeDescriptor lat = build_lattice(hspin16_family());
    FiniteActionGroup grp = build_w_eps(lat, build_grading(lat));
    HalfIntVector nu(std::vector<long long>(8, 1));
    OrbitReport rep = orbit(grp, nu);
    CHECK(rep.orbit_size == 16);
    CHECK(rep.stabilizer_order == 8);
    HalfIntVector zero(8);
    OrbitReport z = orbit(grp, zero);
    CHECK(z.orbit_size == 1);
    CHECK(z.stabilizer_order == grp.order());
  }
}

TEST_CASE("orbit reports satisfy the counting identity and closure") {
  std::mt19937 rng(71);
  for (const Family& fam : {pgl_family(2, 2), pgl_family(3, 2), pgo_family(6), hspin16_family()}) {
    LatticeDescriptor lat = build_lattice(fam);
    FiniteActionGroup grp = build_w_eps(lat, build_grading(lat));
    for (int trial = 0; trial < 20; ++trial) {
      HalfIntVector x(lat.ambient_dim);
      for (std::size_t j = 0; j < lat.rank; ++j) {
        long long c = static_cast<long long>(rng() % 5) - 2;
        for (std::size_t i = 0; i < lat.ambient_dim; ++i)
          x.d[i] += c * lat.ambient_basis[j].d[i];
      }
      OrbitReport rep = orbit(grp, x);
      CHECK(rep.orbit_size * rep.stabilizer_order == grp.order());
      CHECK(std::is_sorted(rep.orbit.begin(), rep.orbit.end()));
      // closure under a sampled element
      std::set<HalfIntVector> os(rep.orbit.begin(), rep.orbit.end());
      CHECK(os.count(rep.seed) == 1);
      const GroupElement& el = grp.elements[rng() % grp.order()];
      for (const auto& y : rep.orbit) CHECK(os.count(el.apply(y)) == 1);
    }
  }
}

TEST_CASE("translation stabilizers of position subsets") {
  CHECK(subset_translation_stabilizer(2, {0, 1}) == std::vector<long long>{0, 1});
  {
    // the full position set is fixed by every translation
    std::vector<long long> all;
    for (long long pos = 0; pos < 12; ++pos) all.push_back(pos);
    CHECK(subset_translation_stabilizer(2, all).size() == 4);
  }
  CHECK(subset_translation_stabilizer(3, {5}) == std::vector<long long>{0});
  CHECK_THROWS_AS(subset_translation_stabilizer(2, {}), Error);

  // stabilizer count never exceeds the subset size
  std::mt19937 rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    long long r = 1 + rng() % 3;
    long long m = 1 + 2 * (rng() % 3);
    long long total = (1ll << r) * m;
    std::vector<long long> y;
    for (long long pos = 0; pos < total; ++pos)
      if (rng() % 3 == 0) y.push_back(pos);
    if (y.empty()) continue;
    std::vector<long long> stab = subset_translation_stabilizer(r, y);
    CHECK(stab.size() <= y.size());
    CHECK_FALSE(stab.empty());
    CHECK(stab.front() == 0);
  }
}

TEST_CASE("minimum orbit scans certify the family constants") {
  struct Case {
    Family fam;
    long long radius;
    std::size_t at_least;
    bool exact;
  };
  std::vector<Case> cases = {
      {pgl_family(2, 1), 2, 2, true},  {pgl_family(2, 2), 2, 4, true},
      {pgl_family(3, 1), 2, 3, true},  {pgl_family(2, 3), 1, 8, true},
      {pgl_family(3, 2), 1, 9, true},  {pgo_family(4), 1, 8, true},
      {pgo_family(6), 1, 4, true},     {hspin16_family(), 1, 16, true},
  };
  for (const auto& c : cases) {
    LatticeDescriptor lat = build_lattice(c.fam);
    Grading g = build_grading(lat);
    FiniteActionGroup grp = build_w_eps(lat, g);
    ScanResult res = min_orbit_scan(grp, lat, g, 1, c.radius);
    INFO("scan of family with ambient dim " << lat.ambient_dim << " radius " << c.radius);
    CHECK(res.min_orbit_size >= c.at_least);
    if (c.exact) CHECK(res.min_orbit_size == c.at_least);
    CHECK(res.vectors_scanned > 0);
    // the witness really attains the minimum with the right grading block
    CHECK(block_nonzero(g, g.eval(res.witness), 1));
    CHECK(orbit(grp, res.witness).orbit_size == res.min_orbit_size);
  }
}

TEST_CASE("second block scans for the branched lattice") {
  LatticeDescriptor lat = build_lattice(e6_family());
  Grading g = build_grading(lat);
  FiniteActionGroup grp = build_w_eps(lat, g);

  ScanResult c1 = min_orbit_scan(grp, lat, g, 1, 1);
  CHECK(c1.min_orbit_size == 9);
  ScanResult c2 = min_orbit_scan(grp, lat, g, 2, 1);
  CHECK(c2.min_orbit_size == 3);
  ScanResult pure = min_orbit_scan(grp, lat, g, 2, 1, true);
  CHECK(pure.min_orbit_size == 3);
  CHECK(pure.second_component_pure);
  GradingValue pv = g.eval(pure.witness);
  CHECK(block_nonzero(g, pv, 2));
  CHECK_FALSE(block_nonzero(g, pv, 1));

  ScanResult c1r2 = min_orbit_scan(grp, lat, g, 1, 2);
  CHECK(c1r2.min_orbit_size == 9);
  ScanResult c2r2 = min_orbit_scan(grp, lat, g, 2, 2);
  CHECK(c2r2.min_orbit_size == 3);

  // block 2 does not exist outside this family
  LatticeDescriptor other = build_lattice(pgl_family(2, 2));
  Grading og = build_grading(other);
  FiniteActionGroup ogrp = build_w_eps(other, og);
  CHECK_THROWS_AS(min_orbit_scan(ogrp, other, og, 2, 1), Error);
}

TEST_CASE("scan output does not depend on the worker count") {
  LatticeDescriptor lat = build_lattice(pgo_family(6));
  Grading g = build_grading(lat);
  FiniteActionGroup grp = build_w_eps(lat, g);
  ScanResult a = min_orbit_scan(grp, lat, g, 1, 1);
  setenv("EDRANK_THREADS", "1", 1);
  ScanResult b = min_orbit_scan(grp, lat, g, 1, 1);
  setenv("EDRANK_THREADS", "3", 1);
  ScanResult c = min_orbit_scan(grp, lat, g, 1, 1);
  unsetenv("EDRANK_THREADS");
  CHECK(a.min_orbit_size == b.min_orbit_size);
  CHECK(a.witness == b.witness);
  CHECK(a.vectors_scanned == b.vectors_scanned);
  CHECK(a.min_orbit_size == c.min_orbit_size);
  CHECK(a.witness == c.witness);
  CHECK(a.vectors_scanned == c.vectors_scanned);
}

TEST_CASE("orbit constant arithmetic") {
  CHECK(symrank_lower_bound(8, 0, 3, 0) == 24);
  CHECK(symrank_lower_bound(16, 0, 4, 0) == 64);
  CHECK(symrank_lower_bound(9, 3, 1, 1) == 12);
  CHECK_THROWS_AS(symrank_lower_bound(0, 0, 3, 0), Error);
  CHECK_THROWS_AS(symrank_lower_bound(4, 0, 2, -1), Error);
}

TEST_CASE("invariant generating set certificates") {
  {
    LatticeDescriptor lat = build_lattice(pgo_family(4));
    Grading g = build_grading(lat);
    FiniteActionGroup grp = build_w_eps(lat, g);
    std::vector<HalfIntVector> gamma = build_dn_remark_gamma(lat, grp);
    GeneratingSetCertificate cert = check_generating_set(grp, lat, gamma, 2);
    CHECK(cert.size == 16);
    CHECK(cert.invariant);
    REQUIRE(cert.index.finite);
    CHECK(cert.index.index % 2 != 0);
    CHECK(cert.is_p_generating);
    // the certificate size meets the orbit-constant bound exactly
    CHECK(static_cast<long long>(cert.size) == symrank_lower_bound(8, 0, 2, 0));
  }
  {
    // a single pair vector is not setwise invariant
    LatticeDescriptor lat = build_lattice(pgo_family(4));
    Grading g = build_grading(lat);
    FiniteActionGroup grp = build_w_eps(lat, g);
    GeneratingSetCertificate cert =
        check_generating_set(grp, lat, {HalfIntVector::from_ints({1, 1, 0, 0})}, 2);
    CHECK_FALSE(cert.invariant);
  }
  {
    LatticeDescriptor lat = build_lattice(pgl_family(3, 1));
    FiniteActionGroup triv = trivial_group(lat.ambient_dim);
    GeneratingSetCertificate cert = check_generating_set(triv, lat, lat.ambient_basis, 3);
    CHECK(cert.invariant);
    REQUIRE(cert.index.finite);
    CHECK(cert.index.index == 1);
    CHECK(cert.is_p_generating);

    std::vector<HalfIntVector> doubled;
    for (const auto& b : lat.ambient_basis) doubled.push_back(2 * b);
    GeneratingSetCertificate d2 = check_generating_set(triv, lat, doubled, 2);
    REQUIRE(d2.index.finite);
    CHECK(d2.index.index == 4);
    CHECK_FALSE(d2.is_p_generating);

    CHECK_THROWS_AS(
        check_generating_set(triv, lat, {HalfIntVector::from_ints({1, 0, 0})}, 3), Error);
  }
}

TEST_CASE("pair orbit certificates across the even family") {
  // Translations act on the index set block by block, so a seed supported in
  // two distinct blocks has trivial translation stabilizer and its orbit is
  // 2^{r+2}, twice the single-block pair orbit 2^{r+1}.  Totals below are
  // r*2^{r+1} + (m-1)*2^{r+2}; the single-block count matches the advertised
  // (r+m-1)*2^{r+1} only when m = 1.
  struct Case {
    long long n;
    std::size_t total;
  };
  for (const auto& c : std::vector<Case>{{4, 16}, {6, 20}, {8, 48}}) {
    LatticeDescriptor lat = build_lattice(pgo_family(c.n));
    Grading g = build_grading(lat);
    FiniteActionGroup grp = build_w_eps(lat, g);
    std::vector<HalfIntVector> gamma = build_dn_remark_gamma(lat, grp);
    CHECK(gamma.size() == c.total);
    CHECK(std::is_sorted(gamma.begin(), gamma.end()));
    CHECK(std::adjacent_find(gamma.begin(), gamma.end()) == gamma.end());
    long long r = 0, m = 0;
    two_adic_split(c.n, r, m);
    std::size_t single = std::size_t{1} << (r + 1);
    // every member's orbit stays inside gamma with one of the two pair sizes
    std::set<HalfIntVector> gset(gamma.begin(), gamma.end());
    std::size_t in_single = 0, in_cross = 0;
    for (const auto& x : gamma) {
      OrbitReport rep = orbit(grp, x);
      CHECK((rep.orbit_size == single || rep.orbit_size == 2 * single));
      (rep.orbit_size == single ? in_single : in_cross) += 1;
      for (const auto& y : rep.orbit) CHECK(gset.count(y) == 1);
    }
    CHECK(in_single == static_cast<std::size_t>(r) * single);
    CHECK(in_cross == static_cast<std::size_t>(m - 1) * 2 * single);
    GeneratingSetCertificate cert = check_generating_set(grp, lat, gamma, 2);
    CHECK(cert.invariant);
    CHECK(cert.is_p_generating);
    // certified upper bound sandwiches the orbit-counting lower bound
    long long lower = symrank_lower_bound(1ll << (r + 1), 0, r + m - 1, 0);
    CHECK(static_cast<long long>(cert.size) >= lower);
    if (m == 1) CHECK(static_cast<long long>(cert.size) == lower);
  }
  // the odd part alone carries no pair certificate
  LatticeDescriptor odd = build_lattice(pgo_family(6));
  Grading og = build_grading(odd);
  FiniteActionGroup ogrp = build_w_eps(odd, og);
  LatticeDescriptor o3 = build_lattice(pgo_family(3));
  CHECK_THROWS_AS(build_dn_remark_gamma(o3, ogrp), Error);
}

TEST_CASE("translation-fixed vectors have vanishing weighted label sum") {
  // binary labels, one digit: fixed vectors are the constants (a,a); the
  // parity hypothesis keeps even a (weighted sum a = 0 mod 2) and the odd a
  // constants are exactly the witnesses excluded by it
  {
    LatticeDescriptor lat = build_lattice(pgl_family(2, 1));
    TranslationSumScan s = scan_translation_label_sums(lat, 2);
    CHECK(s.vectors_scanned == 25);
    CHECK(s.fixed_count == 3);
    CHECK(s.violations == 0);
    CHECK(s.excluded_witnesses == 2);
  }
  // odd p: hypothesis is vacuous, fixed vectors are the five constants and
  // their weighted sum 3a vanishes mod 3
  {
    LatticeDescriptor lat = build_lattice(pgl_family(3, 1));
    TranslationSumScan s = scan_translation_label_sums(lat, 2);
    CHECK(s.vectors_scanned == 125);
    CHECK(s.hypothesis_count == 125);
    CHECK(s.fixed_count == 5);
    CHECK(s.violations == 0);
    CHECK(s.excluded_witnesses == 0);
  }
  // two binary digits: nontrivial stabilizers beyond full constancy exist,
  // e.g. (1,1,0,0) is fixed by the first digit flip with odd weighted sum
  {
    LatticeDescriptor lat = build_lattice(pgl_family(2, 2));
    TranslationSumScan s = scan_translation_label_sums(lat, 2);
    CHECK(s.vectors_scanned == 625);
    CHECK(s.violations == 0);
    CHECK(s.fixed_count > 0);
    CHECK(s.excluded_witnesses > 0);
  }
  // two ternary digits at radius 1
  {
    LatticeDescriptor lat = build_lattice(pgl_family(3, 2));
    TranslationSumScan s = scan_translation_label_sums(lat, 1);
    CHECK(s.vectors_scanned == 19683);
    CHECK(s.violations == 0);
    CHECK(s.excluded_witnesses == 0);
  }
  LatticeDescriptor toy = build_lattice(toy_family(2));
  CHECK_THROWS_AS(scan_translation_label_sums(toy, 1), Error);
}

TEST_CASE("exact rank oracle on tiny lattices") {
  LatticeDescriptor z2 = build_lattice(toy_family(2));
  {
    FiniteActionGroup swap = closure(2, {swap01_dim2()});
    ToyRankResult r = exact_symrank_toy(swap, z2, 2, 1);
    CHECK(r.exact_min == 2);
    CHECK(r.status == ToyStatus::EXACT_WITHIN_RADIUS);
  }
  {
    FiniteActionGroup neg = closure(2, {negation_dim2()});
    // the three sylow subgroup is trivial, so singletons are invariant
    CHECK(exact_symrank_toy(neg, z2, 3, 1).exact_min == 2);
    // at p = 2 every nonzero orbit is a pair, forcing an even answer
    CHECK(exact_symrank_toy(neg, z2, 2, 1).exact_min == 4);
  }
  {
    LatticeDescriptor z1 = build_lattice(toy_family(1));
    CHECK(exact_symrank_toy(trivial_group(1), z1, 2, 1).exact_min == 1);
  }
  {
    LatticeDescriptor z5 = build_lattice(toy_family(5));
    CHECK_THROWS_AS(exact_symrank_toy(trivial_group(5), z5, 2, 1), Error);
    LatticeDescriptor z4 = build_lattice(toy_family(4));
    FiniteActionGroup big = closure(4, {GroupElement{SignedPerm{{1, 0, 2, 3}, {0, 0, 0, 0}}},
                                        GroupElement{SignedPerm{{1, 2, 3, 0}, {0, 0, 0, 0}}}});
    REQUIRE(big.order() > 16);
    CHECK_THROWS_AS(exact_symrank_toy(big, z4, 2, 1), Error);
  }
}

TEST_CASE("oracle results dominate the orbit constant bound") {
  LatticeDescriptor z2 = build_lattice(toy_family(2));
  struct Case {
    FiniteActionGroup grp;
    long long p;
  };
  std::vector<Case> cases;
  cases.push_back({closure(2, {swap01_dim2()}), 2});
  cases.push_back({closure(2, {negation_dim2()}), 3});
  cases.push_back({closure(2, {negation_dim2()}), 2});
  for (const auto& c : cases) {
    Grading g = toy_grading(z2, c.p);
    FiniteActionGroup sp = sylow_subgroup(c.grp, c.p);
    ScanResult scan = min_orbit_scan(sp, z2, g, 1, 1);
    long long lemma = symrank_lower_bound(static_cast<long long>(scan.min_orbit_size), 0,
                                          static_cast<long long>(g.d1), 0);
    ToyRankResult exact = exact_symrank_toy(c.grp, z2, c.p, 1);
    CHECK(static_cast<long long>(exact.exact_min) >= lemma);
  }
}
