#include "qdim/maps.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qdim/cylinder_tree.hpp"
#include "qdim/error.hpp"

namespace qdim {
namespace detail {

double apply_chain(std::span<const Map1D* const> chain, double x) {
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) x = (**it)(x);
  return x;
}

DerivativeRange sample_chain_derivative(std::span<const Map1D* const> chain, const Interval& J,
                                        std::size_t n) {
  if (n < 2) throw InvalidInput("derivative grid needs at least 2 points");
  DerivativeRange out{0.0, HUGE_VAL};
  const double h = J.length() / static_cast<double>(n - 1);
  for (std::size_t m = 0; m < n; ++m) {
    double y = (m + 1 == n) ? J.high : J.low + static_cast<double>(m) * h;
    double d = 1.0;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      d *= std::abs((*it)->derivative(y));
      y = (**it)(y);
    }
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw NotConformal("not conformal: derivative vanishes on J");
    }
    out.sup = std::max(out.sup, d);
    out.inf = std::min(out.inf, d);
  }
  return out;
}

double chain_log_lipschitz(std::span<const Map1D* const> chain, const Interval& J) {
  // log|Psi'(x)| = sum_j log|g_j'(y_j)| where y_j depends on x through the
  // maps inside g_j; adding an inner map g scales the old constant by sup|g'|.
  double lip = 0.0;
  for (const Map1D* g : chain) lip = lip * g->derivative_sup(J) + g->log_derivative_lipschitz(J);
  return lip;
}

void require_nested(const Map1D& map, const Interval& J, std::size_t level, std::size_t symbol) {
  const double tol = 1e-12 * J.length();
  if (!J.contains(map.image(J), tol)) {
    throw NestingViolated("placement violates nesting: map " + std::to_string(symbol) +
                          " at level " + std::to_string(level) + " sends J outside J");
  }
}

}  // namespace detail

namespace {

std::vector<const Map1D*> chain_of(const LevelSchedule& schedule, const Word& u,
                                   std::size_t first_level) {
  if (first_level == 0) throw InvalidInput("levels are 1-based");
  std::vector<const Map1D*> chain;
  chain.reserve(u.depth());
  for (std::size_t j = 0; j < u.depth(); ++j) {
    const std::size_t level = first_level + j;
    const auto& fam = schedule.family(level);
    if (u[j] < 1 || u[j] > fam.size()) {
      throw InvalidInput("word " + u.to_string() + " has symbol " + std::to_string(u[j]) +
                         " outside level " + std::to_string(level) + " alphabet");
    }
    chain.push_back(&fam[u[j] - 1]);
  }
  return chain;
}

}  // namespace

DerivNorm deriv_norm(const System& system, const Word& u, std::size_t first_level) {
  const auto chain = chain_of(system.schedule, u, first_level);
  const bool similar = std::all_of(chain.begin(), chain.end(),
                                   [](const Map1D* m) { return m->is_similarity(); });
  if (similar) {
    double value = 1.0;
    for (const Map1D* m : chain) value *= *m->ratio();
    return {value, value};
  }
  const Interval& J = system.base();
  const auto range = detail::sample_chain_derivative(chain, J, system.grid_points);
  const double h = J.length() / static_cast<double>(system.grid_points - 1);
  const double lip = detail::chain_log_lipschitz(chain, J);
  return {range.sup, range.sup * std::exp(0.5 * lip * h)};
}

Interval cylinder_interval(const System& system, const Word& u, std::size_t first_level) {
  const auto chain = chain_of(system.schedule, u, first_level);
  const Interval& J = system.base();
  for (std::size_t j = 0; j < chain.size(); ++j) {
    detail::require_nested(*chain[j], J, first_level + j, u[j]);
  }
  return span_of(detail::apply_chain(chain, J.low), detail::apply_chain(chain, J.high));
}

double distortion_constant(const System& system, std::size_t max_depth, std::size_t budget) {
  double k = 1.0;
  std::size_t visited = 0;
  walk_cylinders(system, nullptr, [&](const CylinderNode& node) {
    if (node.depth() > 0) {
      if (++visited > budget) throw BudgetExceeded("distortion scan exceeds word budget");
      k = std::max(k, node.norm.value / node.derivative_inf);
    }
    return node.depth() < max_depth;
  });
  return k;
}

}  // namespace qdim
