#pragma once
#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <variant>
#include <vector>

#include "vec.hpp"

namespace edrank {

// Signed permutation of coordinates: position k goes to perm[k], picking up
// sign (-1)^signs[k]. Acting on a vector: y[perm[k]] = (+-1) x[k].
struct SignedPerm {
  std::vector<int> perm;
  std::vector<unsigned char> signs;
};

// Small integer matrix acting on ambient (simple-root) coordinates.
struct ActionMatrix {
  std::size_t n = 0;
  std::vector<long long> a;  // row-major

  long long& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  long long at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct GroupElement {
  std::variant<SignedPerm, ActionMatrix> rep;

  static GroupElement perm_identity(std::size_t dim) {
    SignedPerm s;
    s.perm.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) s.perm[i] = static_cast<int>(i);
    s.signs.assign(dim, 0);
    return GroupElement{s};
  }
  static GroupElement matrix_identity(std::size_t dim) {
    ActionMatrix m;
    m.n = dim;
    m.a.assign(dim * dim, 0);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1;
    return GroupElement{m};
  }

  bool is_perm() const { return std::holds_alternative<SignedPerm>(rep); }
  const SignedPerm& perm() const { return std::get<SignedPerm>(rep); }
  const ActionMatrix& matrix() const { return std::get<ActionMatrix>(rep); }

  HalfIntVector apply(const HalfIntVector& x) const {
    HalfIntVector y(x.size());
    if (is_perm()) {
      const SignedPerm& s = perm();
      for (std::size_t k = 0; k < x.size(); ++k)
        y.d[static_cast<std::size_t>(s.perm[k])] = s.signs[k] ? -x.d[k] : x.d[k];
    } else {
      const ActionMatrix& m = matrix();
      for (std::size_t i = 0; i < m.n; ++i) {
        long long acc = 0;
        for (std::size_t j = 0; j < m.n; ++j) acc += m.at(i, j) * x.d[j];
        y.d[i] = acc;
      }
    }
    return y;
  }

  // allocation-free check apply(x) == x, the hot path of stabilizer counting
  bool fixes(const HalfIntVector& x) const {
    if (is_perm()) {
      const SignedPerm& s = perm();
      for (std::size_t k = 0; k < x.size(); ++k) {
        long long img = s.signs[k] ? -x.d[k] : x.d[k];
        if (x.d[static_cast<std::size_t>(s.perm[k])] != img) return false;
      }
      return true;
    }
    const ActionMatrix& m = matrix();
    for (std::size_t i = 0; i < m.n; ++i) {
      long long acc = 0;
      for (std::size_t j = 0; j < m.n; ++j) acc += m.at(i, j) * x.d[j];
      if (acc != x.d[i]) return false;
    }
    return true;
  }

  // canonical serialization, also the dedup key in closures
  std::vector<long long> key() const {
    std::vector<long long> k;
    if (is_perm()) {
      const SignedPerm& s = perm();
      k.reserve(2 * s.perm.size() + 1);
      k.push_back(0);
      for (int p : s.perm) k.push_back(p);
      for (unsigned char b : s.signs) k.push_back(b);
    } else {
      const ActionMatrix& m = matrix();
      k.reserve(m.a.size() + 1);
      k.push_back(1);
      for (long long v : m.a) k.push_back(v);
    }
    return k;
  }
};

// g then h is compose(h, g): the result acts as h(g(x))
inline GroupElement compose(const GroupElement& outer, const GroupElement& inner) {
  if (outer.is_perm() != inner.is_perm())
    fail(Err::InvalidFamily, "cannot compose a permutation with a matrix action");
  if (outer.is_perm()) {
    const SignedPerm& g = outer.perm();
    const SignedPerm& h = inner.perm();
    SignedPerm r;
    const std::size_t n = h.perm.size();
    r.perm.resize(n);
    r.signs.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t mid = static_cast<std::size_t>(h.perm[k]);
      r.perm[k] = g.perm[mid];
      r.signs[k] = static_cast<unsigned char>(h.signs[k] ^ g.signs[mid]);
    }
    return GroupElement{r};
  }
  const ActionMatrix& g = outer.matrix();
  const ActionMatrix& h = inner.matrix();
  ActionMatrix r;
  r.n = g.n;
  r.a.assign(r.n * r.n, 0);
  for (std::size_t i = 0; i < r.n; ++i)
    for (std::size_t k = 0; k < r.n; ++k) {
      long long v = g.at(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < r.n; ++j) r.a[i * r.n + j] += v * h.at(k, j);
    }
  return GroupElement{r};
}

inline GroupElement inverse(const GroupElement& g) {
  if (!g.is_perm()) fail(Err::InvalidFamily, "matrix inverses are not needed, use closure");
  const SignedPerm& s = g.perm();
  SignedPerm r;
  const std::size_t n = s.perm.size();
  r.perm.resize(n);
  r.signs.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    r.perm[static_cast<std::size_t>(s.perm[k])] = static_cast<int>(k);
    r.signs[static_cast<std::size_t>(s.perm[k])] = s.signs[k];
  }
  return GroupElement{r};
}

struct KeyHash {
  std::size_t operator()(const std::vector<long long>& k) const {
    std::size_t h = 1469598103934665603ull;
    for (long long c : k) {
      h ^= static_cast<std::size_t>(c);
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Finite group of lattice symmetries with every element materialized.
// Element order is canonical (sorted by serialization key), so any two
// constructions of the same group compare equal.
struct FiniteActionGroup {
  std::size_t dim = 0;
  std::vector<GroupElement> generators;
  std::vector<GroupElement> elements;

  std::size_t order() const { return elements.size(); }
};

inline void sort_elements(std::vector<GroupElement>& els) {
  std::sort(els.begin(), els.end(),
            [](const GroupElement& a, const GroupElement& b) { return a.key() < b.key(); });
}

// Multiplicative closure by breadth-first search. Returns false (leaving out
// untouched) when the group would exceed max_order.
inline bool try_closure(std::size_t dim, const std::vector<GroupElement>& gens,
                        std::size_t max_order, FiniteActionGroup& out) {
  GroupElement id = gens.empty() || gens[0].is_perm() ? GroupElement::perm_identity(dim)
                                                      : GroupElement::matrix_identity(dim);
  std::unordered_set<std::vector<long long>, KeyHash> seen;
  std::vector<GroupElement> els;
  els.push_back(id);
  seen.insert(id.key());
  std::size_t head = 0;
  while (head < els.size()) {
    GroupElement cur = els[head++];
    for (const auto& g : gens) {
      GroupElement nxt = compose(g, cur);
      if (seen.insert(nxt.key()).second) {
        if (els.size() >= max_order) return false;
        els.push_back(nxt);
      }
    }
  }
  sort_elements(els);
  out.dim = dim;
  out.generators = gens;
  out.elements = std::move(els);
  return true;
}

inline FiniteActionGroup closure(std::size_t dim, const std::vector<GroupElement>& gens,
                                 std::size_t max_order = 1u << 24) {
  FiniteActionGroup g;
  if (!try_closure(dim, gens, max_order, g))
    fail(Err::BudgetExceeded, "group closure exceeded the element budget");
  return g;
}

inline FiniteActionGroup trivial_group(std::size_t dim) {
  FiniteActionGroup g;
  g.dim = dim;
  g.elements.push_back(GroupElement::perm_identity(dim));
  return g;
}

// Sylow p-subgroup of a small materialized group: grow a p-subgroup greedily;
// every maximal p-subgroup is Sylow, and inside a larger p-subgroup some
// single element always extends the current one.
inline FiniteActionGroup sylow_subgroup(const FiniteActionGroup& grp, long long p) {
  std::size_t target = 1;
  {
    std::size_t n = grp.order();
    while (n % static_cast<std::size_t>(p) == 0) {
      n /= static_cast<std::size_t>(p);
      target *= static_cast<std::size_t>(p);
    }
  }
  auto p_power_order = [&](const GroupElement& g) {
    // order of g divides |G|; check g^(p^k) = id for some k
    GroupElement acc = g;
    GroupElement id = GroupElement::perm_identity(grp.dim);
    std::size_t steps = 0;
    while (!(acc.key() == id.key())) {
      GroupElement next = acc;
      for (long long i = 1; i < p; ++i) next = compose(next, acc);
      acc = next;
      if (++steps > 64) return false;
    }
    return true;
  };
  FiniteActionGroup h = trivial_group(grp.dim);
  bool grew = true;
  while (h.order() < target && grew) {
    grew = false;
    for (const auto& g : grp.elements) {
      if (!g.is_perm()) fail(Err::InvalidFamily, "sylow extraction expects permutation groups");
      if (!p_power_order(g)) continue;
      std::vector<GroupElement> gens = h.generators;
      gens.push_back(g);
      FiniteActionGroup cand;
      if (!try_closure(grp.dim, gens, grp.order(), cand)) continue;
      std::size_t o = cand.order();
      bool is_p_group = true;
      while (o > 1) {
        if (o % static_cast<std::size_t>(p) != 0) { is_p_group = false; break; }
        o /= static_cast<std::size_t>(p);
      }
      if (is_p_group && cand.order() > h.order()) {
        h = cand;
        grew = true;
        break;
      }
    }
  }
  return h;
}

}  // namespace edrank
