#include "qdim/moran.hpp"

#include <algorithm>
#include <cmath>

#include "qdim/error.hpp"

namespace qdim {
namespace {

// g(s) = sum_{i<=k} log sum_j c_{i,j}^s, strictly decreasing in s.
double moran_g(const std::vector<std::vector<double>>& log_ratios, double s) {
  double g = 0.0;
  for (const auto& level : log_ratios) {
    double top = -HUGE_VAL;
    for (double lr : level) top = std::max(top, s * lr);
    double acc = 0.0;
    for (double lr : level) acc += std::exp(s * lr - top);
    g += top + std::log(acc);
  }
  return g;
}

std::vector<double> level_log_ratios(const LevelSchedule& schedule, std::size_t level) {
  std::vector<double> out;
  for (const auto& m : schedule.family(level)) {
    const auto r = m.ratio();
    if (!r) throw InvalidInput("Moran formula needs ratios: level " + std::to_string(level) +
                               " has a non-similarity map");
    out.push_back(std::log(*r));
  }
  return out;
}

double solve(const std::vector<std::vector<double>>& log_ratios) {
  double lo = 0.0, hi = 1.0;
  if (moran_g(log_ratios, hi) > 0.0) {
    throw InvalidInput("Moran root outside [0, 1]: ratios at some level sum above 1");
  }
  // g(0) = sum log #I_i > 0; bisect to the last representable midpoint.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (moran_g(log_ratios, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double moran_sk(const LevelSchedule& schedule, std::size_t k) {
  if (k < 1) throw InvalidInput("moran_sk needs k >= 1");
  std::vector<std::vector<double>> log_ratios;
  for (std::size_t level = 1; level <= k; ++level) log_ratios.push_back(level_log_ratios(schedule, level));
  return solve(log_ratios);
}

MoranReport moran_limits(const LevelSchedule& schedule, std::size_t k_max) {
  if (k_max < 4) throw InvalidInput("moran_limits needs k_max >= 4");
  MoranReport report;
  std::vector<std::vector<double>> log_ratios;
  for (std::size_t k = 1; k <= k_max; ++k) {
    log_ratios.push_back(level_log_ratios(schedule, k));
    report.s.push_back(solve(log_ratios));
  }
  const auto first = report.s.begin() + static_cast<std::ptrdiff_t>(k_max / 2 - 1);
  const auto [lo, hi] = std::minmax_element(first, report.s.end());
  report.s_lower = *lo;
  report.s_upper = *hi;
  report.gap = report.s_upper - report.s_lower;
  report.converged = report.gap < 1e-4;
  report.verdict = report.converged ? "converged" : "oscillating";
  return report;
}

}  // namespace qdim
