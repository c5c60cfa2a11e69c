#include "qdim/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdim/cylinder_tree.hpp"
#include "qdim/error.hpp"
#include "qdim/symbolic.hpp"

namespace qdim {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Streaming log-sum-exp.
class LogSumExp {
public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }
  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

Strategy resolve(const System& system, const SymbolicMeasure& measure, std::size_t k,
                 Strategy requested) {
  const bool fast = fast_path_available(system, measure, k);
  if (requested == Strategy::product_fast_path && !fast) {
    throw InvalidInput("product fast path needs similarity maps and a product measure");
  }
  if (requested == Strategy::automatic) return fast ? Strategy::product_fast_path : Strategy::enumerate;
  return requested;
}

void check_q(double q) {
  if (!(q > 0.0)) throw InvalidInput("pressure needs q > 0");
}

}  // namespace

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::automatic: return "automatic";
    case Strategy::product_fast_path: return "product_fast_path";
    case Strategy::enumerate: return "enumerate";
  }
  return "?";
}

std::string to_string(PressureMode m) { return m == PressureMode::level ? "level" : "cutset"; }

std::string to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::converging: return "converging";
    case SeriesVerdict::diverging: return "diverging";
    case SeriesVerdict::critical: return "critical";
    case SeriesVerdict::undetermined: return "undetermined";
  }
  return "?";
}

bool fast_path_available(const System& system, const SymbolicMeasure& measure, std::size_t k) {
  return measure.product() != nullptr && system.schedule.similarity_only(k);
}

// ---------------------------------------------------------------------------
// PressureSample

std::size_t PressureSample::size() const noexcept {
  if (strategy_ == Strategy::enumerate) return words_.size();
  std::size_t n = 1;
  for (const auto& f : level_factors_) n *= f.size();
  return n;
}

double PressureSample::log_sum(double t, double q) const {
  const double a = t * (1.0 - q);
  if (strategy_ == Strategy::enumerate) {
    LogSumExp acc;
    for (const auto& w : words_) {
      if (w.log_mass != kNegInf) acc.add(a * w.log_norm + q * w.log_mass);
    }
    return acc.value();
  }
  double total = 0.0;
  for (const auto& level : level_factors_) {
    LogSumExp acc;
    for (const auto& f : level) acc.add(a * f.log_norm + q * f.log_mass);
    total += acc.value();
  }
  return total;
}

std::pair<double, double> PressureSample::entropy_lyapunov() const {
  double h = 0.0;
  double lambda = 0.0;
  auto add = [&](const Term& term) {
    if (term.log_mass == kNegInf) return;
    const double mass = std::exp(term.log_mass);
    h -= mass * term.log_mass;
    lambda -= mass * term.log_norm;
  };
  if (strategy_ == Strategy::enumerate) {
    for (const auto& w : words_) add(w);
  } else {
    for (const auto& level : level_factors_)
      for (const auto& f : level) add(f);
  }
  return {h, lambda};
}

double PressureSample::value(double t, double q) const {
  const auto n = static_cast<double>(normalizer_);
  if (q == 1.0) {
    const auto [h, lambda] = entropy_lyapunov();
    return (h - t * lambda) / n;
  }
  return sgn(1.0 - q) * log_sum(t, q) / n;
}

PressureSample PressureSample::level(const System& system, const SymbolicMeasure& measure,
                                     std::size_t k, const PressureOptions& options) {
  auto out = levels(system, measure, k, k, options);
  return std::move(out.front());
}

std::vector<PressureSample> PressureSample::levels(const System& system,
                                                   const SymbolicMeasure& measure,
                                                   std::size_t k_lo, std::size_t k_hi,
                                                   const PressureOptions& options) {
  if (k_lo < 1 || k_hi < k_lo) throw InvalidInput("level range must satisfy 1 <= k_lo <= k_hi");
  const auto& schedule = system.schedule;
  measure.check_compatible(schedule, k_hi);
  const Strategy strategy = resolve(system, measure, k_hi, options.strategy);

  std::vector<PressureSample> out(k_hi - k_lo + 1);
  if (strategy == Strategy::product_fast_path) {
    const auto& product = *measure.product();
    std::vector<std::vector<Term>> factors;
    for (std::size_t level = 1; level <= k_hi; ++level) {
      std::vector<Term> terms;
      const auto& family = schedule.family(level);
      const auto& p = product.vector(level);
      for (std::size_t i = 0; i < family.size(); ++i) {
        terms.push_back({std::log(*family[i].ratio()), std::log(p[i])});
      }
      factors.push_back(std::move(terms));
      if (level >= k_lo) {
        auto& sample = out[level - k_lo];
        sample.level_factors_ = factors;
        sample.normalizer_ = level;
        sample.strategy_ = Strategy::product_fast_path;
      }
    }
    return out;
  }

  if (level_size(schedule, k_hi) > options.budget) {
    throw BudgetExceeded("budget exceeded: level " + std::to_string(k_hi) +
                         " is too large to enumerate");
  }
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    out[k - k_lo].normalizer_ = k;
    out[k - k_lo].strategy_ = Strategy::enumerate;
  }
  walk_cylinders(system, &measure, [&](const CylinderNode& node) {
    const std::size_t d = node.depth();
    if (d >= k_lo && d <= k_hi) {
      out[d - k_lo].words_.push_back({std::log(node.norm.value), safe_log(node.mass)});
    }
    return d < k_hi;
  });
  return out;
}

PressureSample PressureSample::cutset(const System& system, const SymbolicMeasure& measure,
                                      double delta, const PressureOptions& options) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("cut set needs 0 < delta < 1");
  PressureSample out;
  out.strategy_ = Strategy::enumerate;
  std::size_t k_min = std::numeric_limits<std::size_t>::max();
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
    if (node.norm.value > delta) return true;
    if (out.words_.size() >= options.budget) {
      throw BudgetExceeded("budget exceeded: C(delta) too large");
    }
    out.words_.push_back({std::log(node.norm.value), safe_log(node.mass)});
    k_min = std::min(k_min, d);
    return false;
  });
  out.normalizer_ = k_min;
  return out;
}

// ---------------------------------------------------------------------------

double level_sum(const System& system, const SymbolicMeasure& measure, double t, double q,
                 std::size_t k, const PressureOptions& options) {
  check_q(q);
  if (q == 1.0) throw InvalidInput("level_sum needs q != 1; use level_sum_q1");
  return PressureSample::level(system, measure, k, options).value(t, q);
}

EntropyLyapunov level_sum_q1(const System& system, const SymbolicMeasure& measure, std::size_t k,
                             const PressureOptions& options) {
  const auto [h, lambda] = PressureSample::level(system, measure, k, options).entropy_lyapunov();
  return {h, lambda, k};
}

CutsetValue cutset_sum(const System& system, const SymbolicMeasure& measure, double t, double q,
                       double delta, const PressureOptions& options) {
  check_q(q);
  const auto sample = PressureSample::cutset(system, measure, delta, options);
  return {sample.value(t, q), sample.normalizer()};
}

std::vector<double> default_pressure_ladder() {
  std::vector<double> ladder;
  for (int j = 6; j <= 16; ++j) ladder.push_back(std::ldexp(1.0, -j));
  return ladder;
}

// ---------------------------------------------------------------------------
// Roots

DimensionRoot root_of(const PressureSample& sample, double q, double tol) {
  check_q(q);
  if (!(tol > 0.0)) throw InvalidInput("root tolerance must be > 0");
  constexpr double kLimit = 50.0;
  auto f = [&](double t) { return sample.value(t, q); };

  DimensionRoot root;
  root.q = q;
  root.level = sample.normalizer();
  root.strategy = sample.strategy();
  auto exact = [&](double t) {
    root.value = root.t_lo = root.t_hi = t;
    root.p_lo = root.p_hi = 0.0;
    return root;
  };

  double lo = 0.0, hi = 2.0;
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return exact(lo);
  if (fhi == 0.0) return exact(hi);
  for (double step = 1.0; !(flo > 0.0); step *= 2.0) {
    if (lo <= -kLimit) throw RootOutOfRange("root out of range: no sign change in [-50, 50]");
    hi = lo;
    fhi = flo;
    lo = std::max(lo - step, -kLimit);
    flo = f(lo);
    if (flo == 0.0) return exact(lo);
  }
  for (double step = 1.0; !(fhi < 0.0); step *= 2.0) {
    if (hi >= kLimit) throw RootOutOfRange("root out of range: no sign change in [-50, 50]");
    lo = hi;
    flo = fhi;
    hi = std::min(hi + step, kLimit);
    fhi = f(hi);
    if (fhi == 0.0) return exact(hi);
  }
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return exact(mid);
    if (fm > 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  root.value = 0.5 * (lo + hi);
  root.t_lo = lo;
  root.t_hi = hi;
  root.p_lo = flo;
  root.p_hi = fhi;
  return root;
}

namespace {

std::size_t default_level(Strategy s) { return s == Strategy::product_fast_path ? 24 : 12; }

std::vector<double> sorted_ladder(const RootOptions& options) {
  auto ladder = options.ladder.empty() ? default_pressure_ladder() : options.ladder;
  std::sort(ladder.begin(), ladder.end(), std::greater<>());  // coarse to fine
  if (ladder.empty()) throw InvalidInput("empty delta ladder");
  return ladder;
}

}  // namespace

DimensionRoot root_dq(const System& system, const SymbolicMeasure& measure, double q,
                      const RootOptions& options) {
  check_q(q);
  if (options.mode == PressureMode::level) {
    const std::size_t probe = std::max<std::size_t>(options.level, 1);
    const Strategy strategy = resolve(system, measure, std::max<std::size_t>(probe, 24),
                                      options.pressure.strategy);
    const std::size_t k = options.level ? options.level : default_level(strategy);
    PressureOptions po = options.pressure;
    po.strategy = strategy;
    const std::size_t k_half = std::max<std::size_t>(1, k / 2);
    auto samples = PressureSample::levels(system, measure, k_half, k, po);
    auto root = root_of(samples.back(), q, options.tol);
    const auto coarse = root_of(samples.front(), q, options.tol);
    root.drift = std::abs(root.value - coarse.value);
    root.mode = PressureMode::level;
    return root;
  }

  const auto ladder = sorted_ladder(options);
  const double finest = ladder.back();
  // The "half level" partner: the ladder delta closest to sqrt(finest) in log scale.
  const double target = 0.5 * std::log(finest);
  double partner = ladder.front();
  for (double d : ladder) {
    if (std::abs(std::log(d) - target) < std::abs(std::log(partner) - target)) partner = d;
  }
  const auto fine_sample = PressureSample::cutset(system, measure, finest, options.pressure);
  auto root = root_of(fine_sample, q, options.tol);
  const auto coarse = root_of(PressureSample::cutset(system, measure, partner, options.pressure), q,
                              options.tol);
  root.drift = std::abs(root.value - coarse.value);
  root.mode = PressureMode::cutset;
  root.delta = finest;
  return root;
}

PressureCurve pressure_curve(const System& system, const SymbolicMeasure& measure, double q,
                             const std::vector<double>& ts, const RootOptions& options) {
  check_q(q);
  PressureCurve curve;
  curve.q = q;
  curve.mode = options.mode;

  std::vector<PressureSample> samples;
  if (options.mode == PressureMode::level) {
    const Strategy strategy = resolve(system, measure, std::max<std::size_t>(options.level, 24),
                                      options.pressure.strategy);
    const std::size_t k = options.level ? options.level : default_level(strategy);
    PressureOptions po = options.pressure;
    po.strategy = strategy;
    samples = PressureSample::levels(system, measure, (k + 1) / 2, k, po);
  } else {
    const auto ladder = sorted_ladder(options);
    const std::size_t first = ladder.size() / 2;
    for (std::size_t i = first; i < ladder.size(); ++i) {
      samples.push_back(PressureSample::cutset(system, measure, ladder[i], options.pressure));
    }
  }
  curve.strategy = samples.front().strategy();
  for (double t : ts) {
    PressurePoint point{t, HUGE_VAL, -HUGE_VAL};
    for (const auto& s : samples) {
      const double v = s.value(t, q);
      point.lower = std::min(point.lower, v);
      point.upper = std::max(point.upper, v);
    }
    curve.samples.push_back(point);
  }
  return curve;
}

SeriesReport series_partial_sums(const System& system, const SymbolicMeasure& measure, double t,
                                 double q, std::size_t k_max, double eps,
                                 const PressureOptions& options) {
  check_q(q);
  if (q == 1.0) throw InvalidInput("series characterisation needs q != 1");
  if (k_max < 1) throw InvalidInput("series needs k_max >= 1");
  const auto samples = PressureSample::levels(system, measure, 1, k_max, options);

  SeriesReport report;
  double previous_log = 0.0;  // Z_0 = 1
  double running = 0.0;
  for (const auto& s : samples) {
    const double log_z = s.log_sum(t, q);
    running += std::exp(log_z);
    report.partial_sums.push_back(running);
    report.level_ratios.push_back(std::exp(log_z - previous_log));
    previous_log = log_z;
  }
  const std::size_t window = std::min<std::size_t>(5, report.level_ratios.size());
  const auto tail_begin = report.level_ratios.end() - static_cast<std::ptrdiff_t>(window);
  auto all = [&](auto pred) { return std::all_of(tail_begin, report.level_ratios.end(), pred); };
  if (all([eps](double r) { return r < 1.0 - eps; })) {
    report.verdict = SeriesVerdict::converging;
  } else if (all([eps](double r) { return r > 1.0 + eps; })) {
    report.verdict = SeriesVerdict::diverging;
  } else if (all([eps](double r) { return std::abs(r - 1.0) <= eps; })) {
    report.verdict = SeriesVerdict::critical;
  }
  return report;
}

}  // namespace qdim
