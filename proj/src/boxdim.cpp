#include "qdim/boxdim.hpp"

#include <algorithm>
#include <cmath>

#include "qdim/cylinder_tree.hpp"
#include "qdim/error.hpp"
#include "qdim/parallel.hpp"

namespace qdim {
namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t from) {
  const auto n = static_cast<double>(x.size() - from);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = from; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = from; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

MeshHistogram mesh_histogram(const System& system, const SymbolicMeasure& measure, double delta,
                             std::size_t refine, std::size_t budget) {
  const Interval& J = system.base();
  if (!(delta > 0.0 && delta < J.length())) throw InvalidInput("mesh width must lie in (0, |J|)");
  if (refine < 4) throw InvalidInput("refine factor must be >= 4");
  // Cylinder lengths track ||D phi_u|| |J|, so the cut set is taken relative to |J|.
  const double cut_delta = delta / (static_cast<double>(refine) * J.length());
  if (!(cut_delta < 1.0)) throw InvalidInput("delta / refine too large for a cut set");

  MeshHistogram hist;
  hist.delta = delta;
  hist.origin = J.low;
  hist.refine = refine;
  const auto cells = static_cast<std::size_t>(std::ceil(J.length() / delta - 1e-12));
  hist.boundaries = cells > 0 ? cells - 1 : 0;

  std::vector<double> dense(cells + 1, 0.0);
  const double tol = 1e-12 * J.length();
  std::size_t checked = 0;
  walk_cylinders(system, &measure, [&](const CylinderNode& node) {
    const std::size_t d = node.depth();
    if (d == 0) return true;
    if (d > checked) {
      measure.check_compatible(system.schedule, d);
      checked = d;
    }
    if (node.norm.value >= 1.0) {
      throw ContractionViolated("contraction violated: ||D phi_u|| >= 1 for u = " +
                                node.word().to_string());
    }
    if (node.norm.value > cut_delta) return true;
    if (++hist.cylinders > budget) {
      throw BudgetExceeded("budget exceeded: mesh cut set too large; use a larger delta or smaller refine");
    }
    const Interval& I = node.interval;
    const auto cell = static_cast<std::int64_t>(std::floor((I.midpoint() - hist.origin) / delta));
    const auto slot = static_cast<std::size_t>(std::clamp<std::int64_t>(cell, 0, static_cast<std::int64_t>(cells)));
    dense[slot] += node.mass;
    const double next_boundary =
        hist.origin + (std::floor((I.low - hist.origin) / delta) + 1.0) * delta;
    if (next_boundary > I.low + tol && next_boundary < I.high - tol) hist.straddle_mass += node.mass;
    hist.max_cylinder_mass = std::max(hist.max_cylinder_mass, node.mass);
    return false;
  });

  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] > 0.0) {
      hist.masses.emplace(static_cast<std::int64_t>(i), dense[i]);
      hist.total_mass += dense[i];
    }
  }
  hist.straddle_bound = static_cast<double>(hist.boundaries) * hist.max_cylinder_mass;
  return hist;
}

double moment_sum(const MeshHistogram& hist, double q, double threshold) {
  double s = 0.0;
  for (const auto& [cell, mass] : hist.masses) {
    if (mass > threshold) s += (q == 0.0) ? 1.0 : std::pow(mass, q);
  }
  return s;
}

double entropy_sum(const MeshHistogram& hist, double threshold) {
  double s = 0.0;
  for (const auto& [cell, mass] : hist.masses) {
    if (mass > threshold) s += mass * std::log(mass);
  }
  return s;
}

std::vector<double> LadderSpec::deltas() const {
  std::vector<double> out;
  for (std::size_t j = 0; j < count; ++j) out.push_back(std::ldexp(delta0, -static_cast<int>(j)));
  return out;
}

std::vector<MeshHistogram> ladder_histograms(const System& system, const SymbolicMeasure& measure,
                                             const LadderSpec& ladder) {
  const auto deltas = ladder.deltas();
  std::vector<MeshHistogram> out(deltas.size());
  parallel_for(deltas.size(), [&](std::size_t i) {
    out[i] = mesh_histogram(system, measure, deltas[i], ladder.refine, ladder.budget);
  });
  return out;
}

DimensionEstimate estimate_from_histograms(const std::vector<MeshHistogram>& hists, double q) {
  if (hists.size() < 4) throw InvalidInput("dimension estimate needs at least 4 ladder points");
  if (!(q >= 0.0)) throw InvalidInput("dimension estimate needs q >= 0");
  std::vector<const MeshHistogram*> order;
  for (const auto& h : hists) order.push_back(&h);
  std::sort(order.begin(), order.end(),
            [](const MeshHistogram* a, const MeshHistogram* b) { return a->delta > b->delta; });

  DimensionEstimate est;
  est.q = q;
  std::vector<double> x, y;
  for (const MeshHistogram* h : order) {
    LadderPoint p;
    p.delta = h->delta;
    p.log_delta = std::log(h->delta);
    p.straddle_mass = h->straddle_mass;
    if (q == 1.0) {
      p.sum = entropy_sum(*h);
      p.sum_excluding = entropy_sum(*h, kMassThreshold);
      p.log_sum = p.sum;
      x.push_back(p.log_delta);
    } else {
      p.sum = moment_sum(*h, q);
      p.sum_excluding = moment_sum(*h, q, kMassThreshold);
      p.log_sum = std::log(p.sum);
      x.push_back((q - 1.0) * p.log_delta);
    }
    y.push_back(p.log_sum);
    if (std::abs(p.sum - p.sum_excluding) > 1e-12 * std::abs(p.sum)) est.threshold_disagreement = true;
    est.ladder.push_back(p);
  }

  const std::size_t from = x.size() / 2;  // finest half
  est.slope_ls = ls_slope(x, y, from);
  est.slope_ls_full = ls_slope(x, y, 0);
  est.slope_min = HUGE_VAL;
  est.slope_max = -HUGE_VAL;
  for (std::size_t i = from; i + 1 < x.size(); ++i) {
    const double s = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    est.slope_min = std::min(est.slope_min, s);
    est.slope_max = std::max(est.slope_max, s);
  }
  return est;
}

DimensionEstimate estimate_dq(const System& system, const SymbolicMeasure& measure, double q,
                              const LadderSpec& ladder) {
  return estimate_from_histograms(ladder_histograms(system, measure, ladder), q);
}

}  // namespace qdim
