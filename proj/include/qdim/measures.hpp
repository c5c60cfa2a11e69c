#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "qdim/schedule.hpp"
#include "qdim/word.hpp"

namespace qdim {

using ProbabilityVector = std::vector<double>;
using Matrix = std::vector<std::vector<double>>;

/// Non-autonomous Bernoulli measure: mu([u]) = p_{1,u_1} p_{2,u_2} ... p_{k,u_k}.
/// The per-level vectors follow the same prefix/periodic-tail layout as a
/// LevelSchedule.
class ProductMeasure {
public:
  ProductMeasure(std::vector<ProbabilityVector> prefix, std::vector<ProbabilityVector> tail);
  /// The same vector at every level.
  static ProductMeasure bernoulli(ProbabilityVector p);
  /// Uniform vectors matching a prefix/tail schedule.
  static ProductMeasure uniform(const LevelSchedule& schedule);

  const ProbabilityVector& vector(std::size_t level) const;
  std::size_t prefix_length() const noexcept { return prefix_.size(); }
  std::size_t period() const noexcept { return tail_.size(); }

private:
  std::vector<ProbabilityVector> prefix_;
  std::vector<ProbabilityVector> tail_;
};

/// Transfer-matrix data of a 2-block potential f(i, j) on an n-letter alphabet.
struct GibbsSpec {
  Matrix potential;
  double lambda = 1.0;    ///< Perron root of A_ij = exp f(i, j)
  double pressure = 0.0;  ///< P(f) = log lambda
  std::vector<double> left;
  std::vector<double> right;  ///< normalised so that sum(right) = 1 and left . right = 1
};

/// P(f) together with the Perron eigenvectors; power iteration to 1e-13.
/// Entries of -inf mark forbidden transitions. Throws NotMixing when the
/// transfer matrix is not primitive and InvalidInput for NaN or +inf entries.
GibbsSpec solve_gibbs(const Matrix& potential);

/// log of the Perron eigenvalue of exp(f).
double gibbs_pressure(const Matrix& potential);

/// Stationary Markov measure realising the Gibbs measure of a 2-block
/// potential: pi_i = left_i right_i, T_ij = A_ij right_j / (lambda right_i).
class GibbsMeasure {
public:
  explicit GibbsMeasure(const Matrix& potential);

  const GibbsSpec& spec() const noexcept { return spec_; }
  std::size_t alphabet_size() const noexcept { return initial_.size(); }
  const std::vector<double>& initial() const noexcept { return initial_; }
  const Matrix& transition() const noexcept { return transition_; }

  /// S_k f(u) on the periodic extension u_1..u_k u_1 of a finite word.
  double birkhoff_sum(const Word& u) const;

private:
  GibbsSpec spec_;
  std::vector<double> initial_;
  Matrix transition_;
};

/// Cylinder-mass oracle for a product or Markov-Gibbs measure.
class SymbolicMeasure {
public:
  SymbolicMeasure(ProductMeasure m) : kind_(std::move(m)) {}  // NOLINT
  SymbolicMeasure(GibbsMeasure m) : kind_(std::move(m)) {}    // NOLINT

  /// mu([u s]) / mu([u]) where s sits at `level` and `previous` is u_{level-1}
  /// (ignored at level 1).
  double step(std::size_t level, Symbol previous, Symbol symbol) const;

  /// mu([u]) evaluated as a product of steps; mu([]) = 1.
  double cylinder_mass(const Word& u) const;

  const ProductMeasure* product() const noexcept { return std::get_if<ProductMeasure>(&kind_); }
  const GibbsMeasure* gibbs() const noexcept { return std::get_if<GibbsMeasure>(&kind_); }

  /// Throws InvalidInput when a level's alphabet disagrees with the schedule
  /// (checked over the first `levels` levels).
  void check_compatible(const LevelSchedule& schedule, std::size_t levels) const;

private:
  std::variant<ProductMeasure, GibbsMeasure> kind_;
};

/// Result of a Gibbs sandwich scan.
struct GibbsCertificate {
  double a = 1.0;          ///< min(ratio_min, 1 / ratio_max)
  double ratio_min = 1.0;
  double ratio_max = 1.0;
  std::size_t depth = 0;
  std::size_t cylinders = 0;
};

/// Scans every cylinder of depth 1..depth and bounds
/// mu([u]) / exp(-k P(f) + S_k f(u)). Zero-mass cylinders are skipped.
GibbsCertificate gibbs_certificate(const GibbsMeasure& measure, std::size_t depth,
                                   std::size_t budget = std::size_t{1} << 22);

}  // namespace qdim
