#pragma once

#include <algorithm>
#include <compare>
#include <string>

namespace mvl {

/// A truth value, stored as its index in a chain (0 is false, size-1 is true).
using Value = int;

/// Closed interval [lo, hi] of chain indices. A point interval stands for
/// the value itself.
struct Interval {
  Value lo = 0;
  Value hi = 0;

  static constexpr Interval point(Value v) { return {v, v}; }

  constexpr bool valid() const { return 0 <= lo && lo <= hi; }
  constexpr bool is_point() const { return lo == hi; }
  constexpr int width() const { return hi - lo; }
  constexpr bool contains(Value v) const { return lo <= v && v <= hi; }
  constexpr bool subset_of(const Interval& other) const {
    return other.lo <= lo && hi <= other.hi;
  }

  friend constexpr auto operator<=>(const Interval&, const Interval&) = default;
};

/// I1 <=* I2 iff every element of I1 is below every element of I2.
/// Only reflexive on point intervals.
constexpr bool leq_star(const Interval& a, const Interval& b) {
  return a.hi <= b.lo;
}

/// Componentwise order: lo and hi both non-decreasing.
constexpr bool leq_componentwise(const Interval& a, const Interval& b) {
  return a.lo <= b.lo && a.hi <= b.hi;
}

constexpr Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline std::string to_string(const Interval& i) {
  return "[" + std::to_string(i.lo) + "," + std::to_string(i.hi) + "]";
}

}  // namespace mvl
