#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include "edrank/grading.hpp"
#include "edrank/lattice.hpp"
#include "edrank/roots.hpp"
#include "edrank/weyl.hpp"

using namespace edrank;

namespace {

std::vector<std::vector<long long>> element_keys(const FiniteActionGroup& g) {
  std::vector<std::vector<long long>> ks;
  for (const auto& el : g.elements) ks.push_back(el.key());
  return ks;
}

GroupElement random_signed_perm(std::mt19937& rng, std::size_t dim, bool with_signs) {
  SignedPerm s;
  s.perm.resize(dim);
  std::iota(s.perm.begin(), s.perm.end(), 0);
  std::shuffle(s.perm.begin(), s.perm.end(), rng);
  s.signs.resize(dim);
  for (auto& b : s.signs) b = with_signs ? static_cast<unsigned char>(rng() & 1u) : 0;
  return GroupElement{s};
}

HalfIntVector random_vector(std::mt19937& rng, std::size_t dim) {
  HalfIntVector x(dim);
  for (auto& c : x.d) c = static_cast<long long>(rng() % 21) - 10;
  return x;
}

}  // namespace

TEST_CASE("closed form symmetry groups have the predicted orders") {
  struct Case {
    Family fam;
    std::size_t order;
  };
  std::vector<Case> cases = {
      {pgl_family(2, 1), 2},  {pgl_family(2, 2), 4},  {pgl_family(3, 1), 3},
      {pgl_family(2, 3), 8},  {pgl_family(3, 2), 9},  {pgo_family(4), 32},
      {pgo_family(6), 64},    {pgo_family(8), 1u << 10}, {pgo_family(12), 1u << 13},
      {hspin16_family(), 128}, {e6_family(), 9},
  };
  for (const auto& c : cases) {
    LatticeDescriptor lat = build_lattice(c.fam);
    Grading g = build_grading(lat);
    FiniteActionGroup grp = build_w_eps(lat, g);
    INFO("family order check, ambient dim " << lat.ambient_dim);
    CHECK(grp.order() == c.order);
    CHECK_FALSE(grp.generators.empty());
    // generators actually generate the materialized set
    FiniteActionGroup regen = closure(lat.ambient_dim, grp.generators);
    CHECK(element_keys(regen) == element_keys(grp));
  }
}

TEST_CASE("symmetry group elements preserve the grading beyond the basis") {
  std::mt19937 rng(11);
  for (const Family& fam :
       {pgl_family(2, 2), pgl_family(3, 2), pgo_family(6), hspin16_family(), e6_family()}) {
    LatticeDescriptor lat = build_lattice(fam);
    Grading g = build_grading(lat);
    FiniteActionGroup grp = build_w_eps(lat, g);
    // every element, on random lattice members well beyond the basis
    for (int trial = 0; trial < 100; ++trial) {
      HalfIntVector x(lat.ambient_dim);
      for (std::size_t j = 0; j < lat.rank; ++j) {
        long long c = static_cast<long long>(rng() % 7) - 3;
        HalfIntVector b = lat.ambient_basis[j];
        for (std::size_t i = 0; i < lat.ambient_dim; ++i) x.d[i] += c * b.d[i];
      }
      GradingValue vx = g.eval(x);
      bool all_match = true;
      for (const auto& el : grp.elements)
        if (!(g.eval(el.apply(x)) == vx)) all_match = false;
      CHECK(all_match);
    }
  }
}

TEST_CASE("composition matches action composition and inverses cancel") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t dim = 2 + rng() % 7;
    GroupElement a = random_signed_perm(rng, dim, true);
    GroupElement b = random_signed_perm(rng, dim, true);
    GroupElement c = random_signed_perm(rng, dim, true);
    HalfIntVector x = random_vector(rng, dim);
    CHECK(compose(a, b).apply(x) == a.apply(b.apply(x)));
    CHECK(compose(compose(a, b), c).key() == compose(a, compose(b, c)).key());
    CHECK(compose(a, inverse(a)).key() == GroupElement::perm_identity(dim).key());
    CHECK(compose(inverse(a), a).key() == GroupElement::perm_identity(dim).key());
  }
  // same laws for matrix actions built from reflections
  LatticeDescriptor lat = build_lattice(e6_family());
  RootSet rs = enumerate_roots(lat);
  std::vector<GroupElement> refl;
  for (std::size_t j = 0; j < 6; ++j) {
    HalfIntVector unit(6);
    unit.d[j] = 2;
    refl.push_back(root_reflection_matrix(rs.gram, unit, 6));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const GroupElement& a = refl[rng() % refl.size()];
    const GroupElement& b = refl[rng() % refl.size()];
    HalfIntVector x = random_vector(rng, 6);
    CHECK(compose(a, b).apply(x) == a.apply(b.apply(x)));
    CHECK(compose(a, a).key() == GroupElement::matrix_identity(6).key());
  }
}

TEST_CASE("branched lattice symmetries satisfy the defining identities") {
  LatticeDescriptor lat = build_lattice(e6_family());
  RootSet rs = enumerate_roots(lat);
  BranchedSymmetries bs = build_e6_sigma_tau(lat, rs);

  HalfIntVector theta = HalfIntVector::from_ints({3, 2, 1, 2, 1, 2});
  CHECK(bs.highest_root == theta);

  auto unit = [](std::size_t j) {
    HalfIntVector v(6);
    v.d[j] = 2;
    return v;
  };
  HalfIntVector a = unit(0), b12 = unit(1), b21 = unit(2), b22 = unit(3), b31 = unit(4),
                b32 = unit(5);
  HalfIntVector b11 = -theta;

  // tau cycles the arms and resolves the missing far node through the
  // highest root relation
  CHECK(bs.tau.apply(a) == a);
  CHECK(bs.tau.apply(b12) == b22);
  CHECK(bs.tau.apply(b22) == b32);
  CHECK(bs.tau.apply(b32) == b12);
  CHECK(bs.tau.apply(b21) == b31);
  CHECK(bs.tau.apply(b31) == b11);
  CHECK(bs.tau.apply(b11) == b21);

  // arm rotations move the center by the arm sum
  CHECK(bs.sigma_arm[0].apply(a) == a + b11 + b12);
  CHECK(bs.sigma_arm[1].apply(a) == a + b21 + b22);
  CHECK(bs.sigma_arm[2].apply(a) == a + b31 + b32);

  // sigma rotates each arm plane by one third of a turn
  CHECK(bs.sigma.apply(b11) == b12);
  CHECK(bs.sigma.apply(b21) == b22);
  CHECK(bs.sigma.apply(b31) == b32);
  CHECK(bs.sigma.apply(b12) == -b11 - b12);
  CHECK(bs.sigma.apply(b22) == -b21 - b22);
  CHECK(bs.sigma.apply(b32) == -b31 - b32);

  // order relations
  GroupElement id = GroupElement::matrix_identity(6);
  GroupElement s2 = compose(bs.sigma, bs.sigma);
  GroupElement t2 = compose(bs.tau, bs.tau);
  CHECK(compose(bs.sigma, s2).key() == id.key());
  CHECK(compose(bs.tau, t2).key() == id.key());
  CHECK(bs.sigma.key() != id.key());
  CHECK(bs.tau.key() != id.key());
  CHECK(compose(bs.sigma, bs.tau).key() == compose(bs.tau, bs.sigma).key());
  CHECK(closure(6, {bs.sigma, bs.tau}).order() == 9);

  // both symmetries are isometries of the root lattice pairing
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    HalfIntVector x = HalfIntVector::from_ints({(long long)(rng() % 7) - 3, (long long)(rng() % 7) - 3,
                                                (long long)(rng() % 7) - 3, (long long)(rng() % 7) - 3,
                                                (long long)(rng() % 7) - 3, (long long)(rng() % 7) - 3});
    HalfIntVector y = HalfIntVector::from_ints({(long long)(rng() % 7) - 3, (long long)(rng() % 7) - 3,
                                                (long long)(rng() % 7) - 3, (long long)(rng() % 7) - 3,
                                                (long long)(rng() % 7) - 3, (long long)(rng() % 7) - 3});
    CHECK(pairing(rs.gram, bs.tau.apply(x), bs.tau.apply(y)) == pairing(rs.gram, x, y));
    CHECK(pairing(rs.gram, bs.sigma.apply(x), bs.sigma.apply(y)) == pairing(rs.gram, x, y));
  }

  // sigma and tau permute the root set
  std::set<HalfIntVector> roots(rs.roots.begin(), rs.roots.end());
  for (const auto& rt : rs.roots) {
    CHECK(roots.count(bs.sigma.apply(rt)) == 1);
    CHECK(roots.count(bs.tau.apply(rt)) == 1);
  }
}

TEST_CASE("brute forced graded stabilizers match the closed forms") {
  struct Case {
    Family fam;
    int level;
    unsigned long long ambient;
  };
  std::vector<Case> cases = {
      {pgl_family(2, 2), 1, 24},
      {pgl_family(3, 1), 1, 6},
      {pgl_family(2, 3), 1, 40320},
      {pgo_family(4), 1, 192},
      {pgo_family(6), 1, 23040},
  };
  for (const auto& c : cases) {
    LatticeDescriptor lat = build_lattice(c.fam);
    Grading g = build_grading(lat);
    BruteForceResult bf = brute_force_w_eps(lat, g, c.level);
    REQUIRE(bf.status == BruteForceStatus::OK);
    CHECK(bf.ambient_size == c.ambient);
    FiniteActionGroup grp = build_w_eps(lat, g);
    CHECK(element_keys(bf.group) == element_keys(grp));
  }
}

TEST_CASE("brute force respects its budget levels") {
  LatticeDescriptor lat = build_lattice(hspin16_family());
  Grading g = build_grading(lat);
  CHECK(brute_force_w_eps(lat, g, 0).status == BruteForceStatus::SKIPPED);
  CHECK(brute_force_w_eps(lat, g, 1).status == BruteForceStatus::TOO_LARGE);
  LatticeDescriptor big = build_lattice(pgo_family(10));
  Grading gb = build_grading(big);
  CHECK(brute_force_w_eps(big, gb, 2).status == BruteForceStatus::TOO_LARGE);
}

TEST_CASE("hidden full search of the half spin stabilizer", "[.][slow]") {
  LatticeDescriptor lat = build_lattice(hspin16_family());
  Grading g = build_grading(lat);
  BruteForceResult bf = brute_force_w_eps(lat, g, 2);
  REQUIRE(bf.status == BruteForceStatus::OK);
  CHECK(bf.ambient_size == 5160960ull);
  CHECK(element_keys(bf.group) == element_keys(build_w_eps(lat, g)));
}

TEST_CASE("the branched symmetries sit inside the full graded stabilizer") {
  LatticeDescriptor lat = build_lattice(e6_family());
  Grading g = build_grading(lat);
  BruteForceResult bf = brute_force_w_eps(lat, g, 1);
  REQUIRE(bf.status == BruteForceStatus::OK);
  CHECK(bf.ambient_size == 51840);

  std::set<std::vector<long long>> stab;
  for (const auto& el : bf.group.elements) stab.insert(el.key());
  FiniteActionGroup nine = build_w_eps(lat, g);
  for (const auto& el : nine.elements) CHECK(stab.count(el.key()) == 1);

  // The full stabilizer is strictly larger than the order nine subgroup: it
  // is the non-abelian exponent three group of order 27, so the subgroup has
  // index 3 and in particular is not a Sylow 3-subgroup of the stabilizer.
  CHECK(bf.group.order() == 27);
  RootSet rs = enumerate_roots(lat);
  FiniteActionGroup full = build_e6_full_stabilizer(lat, rs, g);
  CHECK(element_keys(full) == element_keys(bf.group));

  std::size_t o = bf.group.order();
  std::size_t three_part = 1;
  while (o % 3 == 0) {
    o /= 3;
    three_part *= 3;
  }
  CHECK(three_part == 27);
  // non-abelian witness inside the stabilizer
  bool all_commute = true;
  for (const auto& x : bf.group.elements)
    for (const auto& y : bf.group.elements)
      if (!(compose(x, y).key() == compose(y, x).key())) all_commute = false;
  CHECK_FALSE(all_commute);
}

TEST_CASE("fixed sublattice ranks") {
  {
    LatticeDescriptor lat = build_lattice(pgl_family(2, 1));
    CHECK(fixed_subspace_rank(lat, {}) == 1);
    CHECK(fixed_subspace_rank(lat, {GroupElement::perm_identity(lat.ambient_dim)}) == 1);
  }
  {
    // a single label translation on four labels fixes a rank one sublattice
    LatticeDescriptor lat = build_lattice(pgl_family(2, 2));
    Grading g = build_grading(lat);
    FiniteActionGroup grp = build_w_eps(lat, g);
    CHECK(fixed_subspace_rank(lat, {grp.generators[0]}) == 1);
    CHECK(fixed_subspace_rank(lat, grp.generators) == 0);
  }
  for (const Family& fam : {pgl_family(2, 3), pgl_family(3, 2), pgo_family(4), pgo_family(6),
                            pgo_family(12), hspin16_family()}) {
    LatticeDescriptor lat = build_lattice(fam);
    Grading g = build_grading(lat);
    FiniteActionGroup grp = build_w_eps(lat, g);
    INFO("full symmetry group must fix nothing, dim " << lat.ambient_dim);
    CHECK(fixed_subspace_rank(lat, grp.generators) == 0);
  }
  {
    // the rank six case already loses every fixed vector under sigma alone
    LatticeDescriptor lat = build_lattice(e6_family());
    RootSet rs = enumerate_roots(lat);
    BranchedSymmetries bs = build_e6_sigma_tau(lat, rs);
    CHECK(fixed_subspace_rank(lat, {bs.sigma}) == 0);
    CHECK(fixed_subspace_rank(lat, {bs.sigma, bs.tau}) == 0);
    CHECK(fixed_subspace_rank(lat, {bs.tau}) == 2);
  }
}

TEST_CASE("small group utilities") {
  // symmetric group on three points from a transposition and a three cycle
  SignedPerm swap01{{1, 0, 2}, {0, 0, 0}};
  SignedPerm cycle{{1, 2, 0}, {0, 0, 0}};
  FiniteActionGroup s3 = closure(3, {GroupElement{swap01}, GroupElement{cycle}});
  REQUIRE(s3.order() == 6);
  CHECK(sylow_subgroup(s3, 2).order() == 2);
  CHECK(sylow_subgroup(s3, 3).order() == 3);
  CHECK(sylow_subgroup(s3, 5).order() == 1);

  // negation on two coordinates
  SignedPerm neg{{0, 1}, {1, 1}};
  FiniteActionGroup pm = closure(2, {GroupElement{neg}});
  REQUIRE(pm.order() == 2);
  CHECK(sylow_subgroup(pm, 2).order() == 2);
  CHECK(sylow_subgroup(pm, 3).order() == 1);

  // a two group is its own two sylow
  LatticeDescriptor lat = build_lattice(pgo_family(4));
  FiniteActionGroup grp = build_w_eps(lat, build_grading(lat));
  CHECK(sylow_subgroup(grp, 2).order() == 32);

  // closure budgets bite
  CHECK_THROWS_AS(closure(3, {GroupElement{cycle}}, 2), Error);
}
