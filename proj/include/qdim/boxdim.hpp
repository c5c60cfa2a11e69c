#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qdim/measures.hpp"
#include "qdim/schedule.hpp"

namespace qdim {

/// Masses of the projected measure on half-open mesh cells
/// [origin + m delta, origin + (m+1) delta), origin = left end of J.
struct MeshHistogram {
  double delta = 0.0;
  double origin = 0.0;
  std::size_t refine = 0;
  std::map<std::int64_t, double> masses;  ///< cell index -> mass

  double total_mass = 0.0;
  /// Mass of cut-set cylinders whose interval has a cell boundary strictly inside.
  double straddle_mass = 0.0;
  /// (cell boundaries inside J) * (largest cylinder mass).
  double straddle_bound = 0.0;
  double max_cylinder_mass = 0.0;
  std::size_t boundaries = 0;
  std::size_t cylinders = 0;

  bool straddle_bound_honored() const noexcept { return straddle_mass <= straddle_bound * (1.0 + 1e-12); }
};

/// Projects mu through C(delta / refine): each cylinder's full mass goes to the
/// cell containing the midpoint of J_u. Requires delta in (0, |J|), refine >= 4.
MeshHistogram mesh_histogram(const System& system, const SymbolicMeasure& measure, double delta,
                             std::size_t refine = 32, std::size_t budget = kDefaultWordBudget);

/// sum nu(Q)^q over stored cells with mass above `threshold`; q = 0 counts cells.
double moment_sum(const MeshHistogram& hist, double q, double threshold = 0.0);
/// sum nu(Q) log nu(Q) over stored cells with mass above `threshold`.
double entropy_sum(const MeshHistogram& hist, double threshold = 0.0);

/// Geometric ladder delta_j = delta0 2^-j, j = 0..count-1.
struct LadderSpec {
  double delta0 = 1.0 / 256.0;
  std::size_t count = 9;
  std::size_t refine = 32;
  std::size_t budget = kDefaultWordBudget;

  std::vector<double> deltas() const;
};

struct LadderPoint {
  double delta = 0.0;
  double sum = 0.0;            ///< moment sum (entropy sum for q = 1)
  double sum_excluding = 0.0;  ///< same with cells below 1e-15 dropped
  double log_delta = 0.0;
  double log_sum = 0.0;        ///< log of the moment sum; the entropy sum itself for q = 1
  double straddle_mass = 0.0;
};

/// Regression of log moment against (q-1) log delta (entropy against log delta
/// for q = 1). Slopes use the finest half of the ladder: least squares there,
/// and the extreme consecutive two-point slopes as liminf/limsup proxies.
struct DimensionEstimate {
  double q = 0.0;
  std::vector<LadderPoint> ladder;
  double slope_ls = 0.0;
  double slope_min = 0.0;
  double slope_max = 0.0;
  double slope_ls_full = 0.0;  ///< least squares over the whole ladder
  /// Some cell carried mass below 1e-15 and the sums with and without it differ.
  bool threshold_disagreement = false;
  std::optional<double> pressure_root;
};

/// Sub-threshold cutoff used by the estimators.
inline constexpr double kMassThreshold = 1e-15;

/// Histograms for every ladder point; built concurrently (QDIM_THREADS caps the
/// thread count), returned in ladder order.
std::vector<MeshHistogram> ladder_histograms(const System& system, const SymbolicMeasure& measure,
                                             const LadderSpec& ladder);

/// Estimate from prebuilt histograms. Throws InvalidInput for fewer than 4 points.
DimensionEstimate estimate_from_histograms(const std::vector<MeshHistogram>& hists, double q);

DimensionEstimate estimate_dq(const System& system, const SymbolicMeasure& measure, double q,
                              const LadderSpec& ladder = {});

}  // namespace qdim
