#pragma once
#include <string>

#include "error.hpp"

namespace edrank {

enum class FamilyTag { PGL, PGO_PLUS, HSPIN16, E6_ADJOINT, TOY_ZK };

// Parameters naming one lattice-with-symmetry instance. PGL carries its own
// prime p and exponent n (index set F_p^n); PGO_PLUS carries n with the
// splitting n = 2^r * m, m odd; HSPIN16 and E6_ADJOINT are rigid; TOY_ZK is
// a plain Z^n used by the small validation oracle, not by the pipelines.
struct Family {
  FamilyTag tag = FamilyTag::TOY_ZK;
  long long p = 0;
  long long n = 0;
};

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline long long pow_ll(long long b, long long e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline Family pgl_family(long long p, long long n) {
  if (!is_prime(p)) fail(Err::InvalidFamilyParams, "p = " + std::to_string(p) + " is not prime");
  if (n < 1) fail(Err::InvalidFamilyParams, "exponent n must be >= 1");
  // index set F_p^n is materialized, keep it small enough to enumerate
  long long size = 1;
  for (long long i = 0; i < n; ++i) {
    size *= p;
    if (size > 4096) fail(Err::InvalidFamilyParams, "p^n exceeds the supported cap 4096");
  }
  return Family{FamilyTag::PGL, p, n};
}

inline Family pgo_family(long long n) {
  if (n < 3) fail(Err::InvalidFamilyParams, "PGO+ needs n >= 3");
  if (n > 16) fail(Err::InvalidFamilyParams, "n exceeds the supported cap 16");
  return Family{FamilyTag::PGO_PLUS, 2, n};
}

inline Family hspin16_family() { return Family{FamilyTag::HSPIN16, 2, 8}; }

inline Family e6_family() { return Family{FamilyTag::E6_ADJOINT, 3, 6}; }

inline Family toy_family(long long n) {
  if (n < 1 || n > 8) fail(Err::InvalidFamilyParams, "toy rank must be in 1..8");
  return Family{FamilyTag::TOY_ZK, 0, n};
}

// 2-adic split n = 2^r * m with m odd
inline void two_adic_split(long long n, long long& r, long long& m) {
  r = 0;
  m = n;
  while (m % 2 == 0) {
    m /= 2;
    ++r;
  }
}

// PGL index labels are the tuples of F_p^n in lexicographic order, i.e. the
// base-p digit strings of 0..p^n-1, most significant digit first.
inline long long pgl_label_count(const Family& f) { return pow_ll(f.p, f.n); }

inline long long pgl_add(const Family& f, long long a, long long b) {
  long long res = 0, place = 1;
  for (long long i = 0; i < f.n; ++i) {
    long long da = a % f.p, db = b % f.p;
    res += ((da + db) % f.p) * place;
    a /= f.p;
    b /= f.p;
    place *= f.p;
  }
  return res;
}

inline std::string pgl_label(const Family& f, long long v) {
  std::string s(static_cast<std::size_t>(f.n), '0');
  for (long long i = f.n - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = static_cast<char>('0' + v % f.p);
    v /= f.p;
  }
  return s;
}

// PGO index set K = F_2^r x {1..m}, ordered by i then lexicographic v;
// position of (v, i) is (i-1)*2^r + v.
inline long long pgo_pos(long long r, long long v, long long i) { return (i - 1) * (1ll << r) + v; }

inline std::string pgo_label(long long r, long long pos) {
  long long v = pos % (1ll << r), i = pos / (1ll << r) + 1;
  std::string bits;
  for (long long b = r - 1; b >= 0; --b) bits += static_cast<char>('0' + ((v >> b) & 1));
  if (r == 0) bits = "-";
  return bits + ":" + std::to_string(i);
}

// F_2^3 labels for the 8 half-spin coordinates, lexicographic
inline std::string f2_label(long long bits, long long width) {
  std::string s;
  for (long long b = width - 1; b >= 0; --b) s += static_cast<char>('0' + ((bits >> b) & 1));
  return s;
}

}  // namespace edrank
