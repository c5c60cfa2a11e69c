#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qdim/measures.hpp"
#include "qdim/schedule.hpp"

namespace qdim {

/// How level sums are evaluated.
enum class Strategy {
  automatic,          ///< fast path when available, enumeration otherwise
  product_fast_path,  ///< similarity maps with a product measure: per-level factorisation
  enumerate,          ///< explicit sum over words
};

/// Which family of words the pressure is normalised over.
enum class PressureMode {
  level,   ///< Sigma^k with 1/k
  cutset,  ///< C(delta) with 1/k_delta
};

std::string to_string(Strategy s);
std::string to_string(PressureMode m);

struct PressureOptions {
  Strategy strategy = Strategy::automatic;
  std::size_t budget = kDefaultWordBudget;
};

/// True when the product fast path applies to levels 1..k.
bool fast_path_available(const System& system, const SymbolicMeasure& measure, std::size_t k);

/// The data behind one pressure evaluation: either the words of a level /
/// cut set reduced to (log ||D phi_u||, log mu([u])) pairs, or, on the fast
/// path, the per-level (log ratio, log probability) factors. Evaluating at many
/// (t, q) is cheap once a sample is built.
class PressureSample {
public:
  /// sgn(1-q)/n log sum ||D phi_u||^{t(1-q)} mu([u])^q for q != 1, and
  /// (H - t Lambda)/n for q = 1, with n the normaliser.
  double value(double t, double q) const;

  /// log sum ||D phi_u||^{t(1-q)} mu([u])^q (no sign, no normalisation).
  double log_sum(double t, double q) const;

  /// H = -sum mu log mu and Lambda = -sum mu log ||D phi_u||.
  std::pair<double, double> entropy_lyapunov() const;

  std::size_t normalizer() const noexcept { return normalizer_; }
  Strategy strategy() const noexcept { return strategy_; }
  std::size_t size() const noexcept;

  /// Sigma^k.
  static PressureSample level(const System& system, const SymbolicMeasure& measure,
                              std::size_t k, const PressureOptions& options = {});
  /// Sigma^k for every k in [k_lo, k_hi] from a single walk.
  static std::vector<PressureSample> levels(const System& system,
                                            const SymbolicMeasure& measure, std::size_t k_lo,
                                            std::size_t k_hi,
                                            const PressureOptions& options = {});
  /// C(delta), normalised by k_delta.
  static PressureSample cutset(const System& system, const SymbolicMeasure& measure,
                               double delta, const PressureOptions& options = {});

private:
  struct Term {
    double log_norm;
    double log_mass;
  };
  std::vector<Term> words_;                      // enumeration
  std::vector<std::vector<Term>> level_factors_;  // fast path, one list per level
  std::size_t normalizer_ = 1;
  Strategy strategy_ = Strategy::enumerate;
};

/// Level-k pressure value for q > 0, q != 1.
double level_sum(const System& system, const SymbolicMeasure& measure, double t, double q,
                 std::size_t k, const PressureOptions& options = {});

/// Entropy and Lyapunov parts over Sigma^k; the level-k q = 1 pressure is
/// (entropy - t lyapunov)/k with root entropy/lyapunov.
struct EntropyLyapunov {
  double entropy = 0.0;
  double lyapunov = 0.0;
  std::size_t k = 1;

  double pressure(double t) const { return (entropy - t * lyapunov) / static_cast<double>(k); }
  double root() const { return entropy / lyapunov; }
};
EntropyLyapunov level_sum_q1(const System& system, const SymbolicMeasure& measure,
                             std::size_t k, const PressureOptions& options = {});

struct CutsetValue {
  double value = 0.0;
  std::size_t k_delta = 0;
};
/// Cut-set pressure value at delta (q = 1 uses the entropy form).
CutsetValue cutset_sum(const System& system, const SymbolicMeasure& measure, double t, double q,
                       double delta, const PressureOptions& options = {});

/// 2^-6 ... 2^-16.
std::vector<double> default_pressure_ladder();

struct RootOptions {
  PressureMode mode = PressureMode::level;
  double tol = 1e-9;
  /// Finest level; 0 picks 24 on the fast path and 12 for enumeration.
  std::size_t level = 0;
  /// Cut-set ladder; empty means default_pressure_ladder().
  std::vector<double> ladder;
  PressureOptions pressure;
};

/// Jump point of t -> P(t, q) with its bracketing certificate.
struct DimensionRoot {
  double q = 0.0;
  double value = 0.0;
  double t_lo = 0.0;  ///< P(t_lo) > 0 (or = 0 when the root was hit exactly)
  double t_hi = 0.0;  ///< P(t_hi) < 0 (or = 0 when the root was hit exactly)
  double p_lo = 0.0;
  double p_hi = 0.0;
  /// |root at the finest level - root at the half level| (level k vs k/2, or
  /// delta vs roughly sqrt(delta)).
  double drift = 0.0;
  PressureMode mode = PressureMode::level;
  Strategy strategy = Strategy::enumerate;
  std::size_t level = 0;  ///< finest level, or k_delta in cut-set mode
  double delta = 0.0;     ///< finest delta in cut-set mode
};

/// Bisection on the finest sample after expanding a bracket from [0, 2]
/// outwards; throws RootOutOfRange when no sign change exists in [-50, 50].
DimensionRoot root_dq(const System& system, const SymbolicMeasure& measure, double q,
                      const RootOptions& options = {});

/// Root of an already built sample.
DimensionRoot root_of(const PressureSample& sample, double q, double tol);

struct PressurePoint {
  double t = 0.0;
  double lower = 0.0;  ///< min over the finest half of the levels/ladder
  double upper = 0.0;  ///< max over the same window
};

struct PressureCurve {
  double q = 0.0;
  PressureMode mode = PressureMode::level;
  Strategy strategy = Strategy::enumerate;
  std::vector<PressurePoint> samples;
};

/// Evaluates the lower/upper pressure proxies at every t. Level mode uses
/// levels ceil(k/2)..k, cut-set mode the finest half of the ladder.
PressureCurve pressure_curve(const System& system, const SymbolicMeasure& measure, double q,
                             const std::vector<double>& ts, const RootOptions& options = {});

enum class SeriesVerdict { converging, diverging, critical, undetermined };
std::string to_string(SeriesVerdict v);

struct SeriesReport {
  std::vector<double> partial_sums;  ///< S_1..S_kmax
  std::vector<double> level_ratios;  ///< Z_k / Z_{k-1}, Z_0 = 1
  SeriesVerdict verdict = SeriesVerdict::undetermined;
};

/// Partial sums of sum_k sum_{Sigma^k} ||D phi_u||^{t(1-q)} mu([u])^q. The
/// verdict looks at the last five level ratios: all < 1 - eps converging,
/// all > 1 + eps diverging, all within eps of 1 critical.
SeriesReport series_partial_sums(const System& system, const SymbolicMeasure& measure, double t,
                                 double q, std::size_t k_max, double eps = 1e-6,
                                 const PressureOptions& options = {});

}  // namespace qdim
