#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "qdim/measures.hpp"
#include "qdim/schedule.hpp"
#include "qdim/word.hpp"

namespace fixtures {

using qdim::Interval;
using qdim::LevelSchedule;
using qdim::Map1D;
using qdim::MapFamily;
using qdim::System;

inline constexpr Interval kUnit{0.0, 1.0};

inline MapFamily equal_family(double ratio, std::size_t n) {
  MapFamily f;
  const double gap = n > 1 ? (1.0 - n * ratio) / static_cast<double>(n - 1) : 0.0;
  for (std::size_t i = 0; i < n; ++i) f.push_back(Map1D::similarity(ratio, i * (ratio + gap)));
  return f;
}

inline System tiling() { return System{LevelSchedule::autonomous(kUnit, equal_family(0.5, 2))}; }

inline System cantor() {
  return System{LevelSchedule::autonomous(
      kUnit, {Map1D::similarity(1.0 / 3.0, 0.0), Map1D::similarity(1.0 / 3.0, 2.0 / 3.0)})};
}

inline System two_scale() {
  return System{LevelSchedule::autonomous(
      kUnit, {Map1D::similarity(0.5, 0.0), Map1D::similarity(1.0 / 3.0, 0.6)})};
}

inline System mobius() {
  return System{LevelSchedule::autonomous(kUnit, {Map1D::mobius(2.0), Map1D::mobius(3.0)})};
}

inline System moran_alternating() {
  return System{LevelSchedule(kUnit, {}, {equal_family(0.25, 2), equal_family(0.2, 3)})};
}

/// Ratio-1/4 pair on levels in [4^m, 2 * 4^m), ratio-1/5 triple otherwise.
inline bool quarter_level(std::size_t level) {
  std::size_t block = 1;
  while (block * 4 <= level) block *= 4;
  return level < 2 * block;
}

inline System block_doubling() {
  return System{LevelSchedule(kUnit, [](std::size_t level) {
    return quarter_level(level) ? equal_family(0.25, 2) : equal_family(0.2, 3);
  })};
}

/// Two maps of ratio 2^(-2^k) at level k.
inline System pathological() {
  return System{LevelSchedule(kUnit, [](std::size_t level) {
    return equal_family(std::ldexp(1.0, -(1 << level)), 2);
  })};
}

inline qdim::SymbolicMeasure uniform2() { return qdim::ProductMeasure::bernoulli({0.5, 0.5}); }
inline qdim::SymbolicMeasure skewed() { return qdim::ProductMeasure::bernoulli({0.3, 0.7}); }
inline qdim::SymbolicMeasure zero_gibbs() { return qdim::GibbsMeasure({{0.0, 0.0}, {0.0, 0.0}}); }

/// Monotone scalar root by TOMS 748 on [lo, hi].
inline double scalar_root(const std::function<double(double)>& f, double lo, double hi) {
  std::uintmax_t iterations = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52),
                                                   iterations);
  return 0.5 * (r.first + r.second);
}

/// Closed-form d_q of a self-similar measure with equal ratio r and weights p.
inline double homogeneous_dq(const std::vector<double>& p, double r, double q) {
  if (q == 1.0) {
    double h = 0.0;
    for (double x : p) h -= x * std::log(x);
    return h / -std::log(r);
  }
  double s = 0.0;
  for (double x : p) s += std::pow(x, q);
  return std::log(s) / ((1.0 - q) * -std::log(r));
}

/// Mobius composition as a 2x2 matrix [[a, b], [c, d]] acting by (a x + b)/(c x + d).
struct Mobius2 {
  double a = 1, b = 0, c = 0, d = 1;

  Mobius2 then_inner(double shift) const {
    // x -> 1/(x + shift) is [[0, 1], [1, shift]].
    return {b, a + b * shift, d, c + d * shift};
  }
  double value(double x) const { return (a * x + b) / (c * x + d); }
  double derivative(double x) const {
    const double den = c * x + d;
    return std::abs(a * d - b * c) / (den * den);
  }
  /// |derivative| is monotone on [0, 1] (no pole there), so the sup sits at an endpoint.
  double norm() const { return std::max(derivative(0.0), derivative(1.0)); }
};

/// Exact composition for a word over shifts {2, 3}.
inline Mobius2 mobius_word(const qdim::Word& u) {
  static constexpr std::array<double, 2> shifts{2.0, 3.0};
  Mobius2 m;
  for (std::size_t i = 0; i < u.depth(); ++i) m = m.then_inner(shifts[u[i] - 1]);
  return m;
}

/// Every word over a fixed alphabet with depth in [1, depth].
inline std::vector<qdim::Word> all_words(std::size_t alphabet, std::size_t depth) {
  std::vector<qdim::Word> out;
  std::vector<qdim::Word> layer{qdim::Word{}};
  for (std::size_t k = 1; k <= depth; ++k) {
    std::vector<qdim::Word> next;
    for (const auto& u : layer)
      for (qdim::Symbol s = 1; s <= alphabet; ++s) next.push_back(u.child(s));
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace fixtures
