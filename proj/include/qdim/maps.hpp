#pragma once

#include <cstddef>
#include <span>

#include "qdim/interval.hpp"
#include "qdim/schedule.hpp"
#include "qdim/word.hpp"

namespace qdim {

/// ||D phi_u|| on J: the sampled supremum and a certified upper bound.
struct DerivNorm {
  double value = 1.0;
  /// value * exp(L h / 2), L the Lipschitz constant of log|Psi_u'| and h the
  /// grid spacing. Equal to value for similarity words.
  double upper = 1.0;
};

/// Derivative norm of the placed composition Psi_u for u read from
/// `first_level` on. Similarity words give the exact product of ratios.
/// Throws NotConformal when a sampled derivative vanishes.
DerivNorm deriv_norm(const System& system, const Word& u, std::size_t first_level = 1);

/// J_u = Psi_u(J). Throws NestingViolated when a placed map sends J outside J.
Interval cylinder_interval(const System& system, const Word& u, std::size_t first_level = 1);

/// Empirical distortion constant: max over words of depth 1..max_depth of
/// sup|Psi_u'| / inf|Psi_u'| on the grid. Exactly 1 for similarity systems.
double distortion_constant(const System& system, std::size_t max_depth,
                           std::size_t budget = kDefaultWordBudget);

namespace detail {

struct DerivativeRange {
  double sup = 1.0;
  double inf = 1.0;
};

/// Applies chain[0] o chain[1] o ... o chain[k-1] to x.
double apply_chain(std::span<const Map1D* const> chain, double x);

/// Grid sup/inf of |(chain[0] o ... o chain[k-1])'| over J with n points.
DerivativeRange sample_chain_derivative(std::span<const Map1D* const> chain, const Interval& J,
                                        std::size_t n);

/// Lipschitz constant of log|Psi'| for the chain, built inner map first.
double chain_log_lipschitz(std::span<const Map1D* const> chain, const Interval& J);

/// Throws NestingViolated unless map(J) lies in J.
void require_nested(const Map1D& map, const Interval& J, std::size_t level, std::size_t symbol);

}  // namespace detail

}  // namespace qdim
