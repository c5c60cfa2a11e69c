#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "qdim/interval.hpp"

namespace qdim {

/// A one-dimensional contraction x -> phi(x) + offset.
///
/// Three kinds are supported:
///  - similarity: phi(x) = orientation * ratio * x, ratio in (0, 1);
///  - mobius:     phi(x) = 1 / (x + shift), shift >= 2;
///  - smooth:     a monotone C^1 map given by value and derivative oracles.
///
/// The offset is the per-level placement applied after phi.
class Map1D {
public:
  struct Similarity {
    double ratio;
    int orientation;
  };
  struct Mobius {
    double shift;
  };
  struct Smooth {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    /// Lipschitz constant of log|phi'| on the base interval; negative means
    /// "estimate it from the derivative oracle".
    double log_derivative_lipschitz = -1.0;
  };
  using Kind = std::variant<Similarity, Mobius, Smooth>;

  static Map1D similarity(double ratio, double offset = 0.0, int orientation = 1);
  static Map1D mobius(double shift, double offset = 0.0);
  static Map1D smooth(std::function<double(double)> value,
                      std::function<double(double)> derivative, double offset = 0.0,
                      double log_derivative_lipschitz = -1.0);

  /// Placed image phi(x) + offset.
  double operator()(double x) const;
  /// phi'(x); the offset does not contribute.
  double derivative(double x) const;

  /// sup |phi'| over J. Exact for similarities and Mobius maps; for smooth maps
  /// the grid supremum inflated by exp(L h / 2), an upper bound.
  double derivative_sup(const Interval& J) const;
  /// Lipschitz constant of log|phi'| over J (0 for similarities).
  double log_derivative_lipschitz(const Interval& J) const;
  /// Placed image of J.
  Interval image(const Interval& J) const;

  bool is_similarity() const noexcept { return std::holds_alternative<Similarity>(kind_); }
  /// Contraction ratio when the map is a similarity.
  std::optional<double> ratio() const noexcept;
  double offset() const noexcept { return offset_; }
  const Kind& kind() const noexcept { return kind_; }

  std::string describe() const;

private:
  Map1D(Kind kind, double offset) : kind_(std::move(kind)), offset_(offset) {}

  Kind kind_;
  double offset_ = 0.0;
};

}  // namespace qdim
