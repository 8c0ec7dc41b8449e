#pragma once
#include <cstddef>
#include <cstdlib>
#include <string>
#include <vector>

#include "error.hpp"

namespace edrank {

// Vector with doubled integer coordinates: d[i] stores twice the real value,
// so half-integral coordinates stay exact. A coordinate is integral iff its
// doubled value is even.
struct HalfIntVector {
  std::vector<long long> d;

  HalfIntVector() = default;
  explicit HalfIntVector(std::size_t n) : d(n, 0) {}
  explicit HalfIntVector(std::vector<long long> doubled) : d(std::move(doubled)) {}

  static HalfIntVector from_ints(const std::vector<long long>& v) {
    HalfIntVector x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) x.d[i] = 2 * v[i];
    return x;
  }

  std::size_t size() const { return d.size(); }

  bool is_zero() const {
    for (long long c : d) if (c != 0) return false;
    return true;
  }
  bool is_integral() const {
    for (long long c : d) if (c % 2 != 0) return false;
    return true;
  }
  bool is_uniformly_half() const {
    for (long long c : d) if (c % 2 == 0) return false;
    return true;
  }

  long long doubled_sum() const {
    long long s = 0;
    for (long long c : d) s += c;
    return s;
  }

  friend bool operator==(const HalfIntVector& a, const HalfIntVector& b) { return a.d == b.d; }
  friend bool operator!=(const HalfIntVector& a, const HalfIntVector& b) { return a.d != b.d; }
  // lexicographic on doubled coordinates, the tie-break order used everywhere
  friend bool operator<(const HalfIntVector& a, const HalfIntVector& b) { return a.d < b.d; }

  HalfIntVector& operator+=(const HalfIntVector& o) {
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += o.d[i];
    return *this;
  }
  HalfIntVector& operator-=(const HalfIntVector& o) {
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= o.d[i];
    return *this;
  }
  friend HalfIntVector operator+(HalfIntVector a, const HalfIntVector& b) { return a += b; }
  friend HalfIntVector operator-(HalfIntVector a, const HalfIntVector& b) { return a -= b; }
  friend HalfIntVector operator-(HalfIntVector a) {
    for (auto& c : a.d) c = -c;
    return a;
  }
  friend HalfIntVector operator*(long long k, HalfIntVector a) {
    for (auto& c : a.d) c *= k;
    return a;
  }

  // "3/2" style rendering of the real values, for logs and error messages
  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i) s += ", ";
      if (d[i] % 2 == 0) s += std::to_string(d[i] / 2);
      else s += std::to_string(d[i]) + "/2";
    }
    return s + ")";
  }
};

struct HalfIntVectorHash {
  std::size_t operator()(const HalfIntVector& v) const {
    std::size_t h = 1469598103934665603ull;
    for (long long c : v.d) {
      h ^= static_cast<std::size_t>(c);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace edrank
