#pragma once

#include <algorithm>

namespace qdim {

/// Closed interval [low, high] on the real line.
struct Interval {
  double low = 0.0;
  double high = 1.0;

  double length() const noexcept { return high - low; }
  double midpoint() const noexcept { return 0.5 * (low + high); }

  bool contains(const Interval& other, double tol = 0.0) const noexcept {
    return other.low >= low - tol && other.high <= high + tol;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Interval spanned by two endpoints in either order.
inline Interval span_of(double a, double b) noexcept {
  return {std::min(a, b), std::max(a, b)};
}

/// Length of the common part of the interiors (0 when they are disjoint or touch).
inline double interior_overlap(const Interval& a, const Interval& b) noexcept {
  return std::max(0.0, std::min(a.high, b.high) - std::max(a.low, b.low));
}

}  // namespace qdim
