#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qdim/schedule.hpp"

namespace qdim {

/// Root s_k of prod_{i<=k} sum_j c_{i,j}^s = 1 on [0, 1] by bisection.
/// Throws InvalidInput ("Moran formula needs ratios") for non-similarity levels.
double moran_sk(const LevelSchedule& schedule, std::size_t k);

struct MoranReport {
  std::vector<double> s;  ///< s_1..s_kmax
  double s_lower = 0.0;   ///< min of s_k over k in [kmax/2, kmax]
  double s_upper = 0.0;   ///< max over the same window
  double gap = 0.0;
  bool converged = false;  ///< gap < 1e-4
  std::string verdict;     ///< "converged" or "oscillating"
};

MoranReport moran_limits(const LevelSchedule& schedule, std::size_t k_max);

}  // namespace qdim
