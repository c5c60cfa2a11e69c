#include "qdim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "qdim/error.hpp"

namespace qdim {
namespace {

void check_probability_vector(const ProbabilityVector& p, std::size_t level) {
  const auto where = " (level " + std::to_string(level) + ")";
  if (p.size() < 2) throw InvalidInput("probability vector needs >= 2 entries" + where);
  double sum = 0.0;
  for (double x : p) {
    if (!(x > 0.0)) throw InvalidInput("probability entries must be > 0" + where);
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidInput("probability vector must sum to 1" + where);
}

// Power iteration for the Perron vector of M (or of M^T when transpose is set).
std::pair<double, std::vector<double>> perron(const Matrix& m, bool transpose) {
  const std::size_t n = m.size();
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> w(n);
  double lambda = 0.0;
  constexpr double kTol = 1e-13;
  for (int iter = 0; iter < 1'000'000; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += (transpose ? m[j][i] : m[i][j]) * v[j];
      w[i] = s;
    }
    const double norm = std::accumulate(w.begin(), w.end(), 0.0);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] /= norm;
      change = std::max(change, std::abs(w[i] - v[i]));
    }
    v.swap(w);
    const bool settled = std::abs(norm - lambda) <= kTol * norm && change <= kTol;
    lambda = norm;
    if (settled && iter > 2) return {lambda, v};
  }
  throw NotMixing("potential not mixing: power iteration did not converge");
}

bool primitive(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<char>> base(n, std::vector<char>(n)), power;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i][j] = a[i][j] > 0.0;
  power = base;
  // Wielandt: a primitive n x n matrix has A^m > 0 for m = (n-1)^2 + 1.
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  for (std::size_t m = 1;; ++m) {
    bool all = true;
    for (const auto& row : power)
      for (char c : row) all = all && c;
    if (all) return true;
    if (m >= bound) return false;
    std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (power[i][k])
          for (std::size_t j = 0; j < n; ++j) next[i][j] = next[i][j] || base[k][j];
    power.swap(next);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

ProductMeasure::ProductMeasure(std::vector<ProbabilityVector> prefix,
                               std::vector<ProbabilityVector> tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  if (tail_.empty()) throw InvalidInput("product measure needs a periodic tail");
  for (std::size_t i = 0; i < prefix_.size(); ++i) check_probability_vector(prefix_[i], i + 1);
  for (std::size_t i = 0; i < tail_.size(); ++i)
    check_probability_vector(tail_[i], prefix_.size() + i + 1);
}

ProductMeasure ProductMeasure::bernoulli(ProbabilityVector p) {
  return ProductMeasure({}, {std::move(p)});
}

ProductMeasure ProductMeasure::uniform(const LevelSchedule& schedule) {
  if (!schedule.has_tail()) throw InvalidInput("uniform measure needs a prefix/tail schedule");
  auto make = [&](std::size_t level) {
    const std::size_t n = schedule.alphabet_size(level);
    return ProbabilityVector(n, 1.0 / static_cast<double>(n));
  };
  std::vector<ProbabilityVector> prefix, tail;
  for (std::size_t i = 1; i <= schedule.prefix_length(); ++i) prefix.push_back(make(i));
  for (std::size_t i = 1; i <= schedule.period(); ++i)
    tail.push_back(make(schedule.prefix_length() + i));
  return ProductMeasure(std::move(prefix), std::move(tail));
}

const ProbabilityVector& ProductMeasure::vector(std::size_t level) const {
  if (level == 0) throw InvalidInput("levels are 1-based");
  if (level <= prefix_.size()) return prefix_[level - 1];
  return tail_[(level - prefix_.size() - 1) % tail_.size()];
}

// ---------------------------------------------------------------------------

GibbsSpec solve_gibbs(const Matrix& potential) {
  const std::size_t n = potential.size();
  if (n < 2) throw InvalidInput("potential needs an alphabet of >= 2 symbols");
  Matrix a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (potential[i].size() != n) throw InvalidInput("potential matrix must be square");
    for (std::size_t j = 0; j < n; ++j) {
      const double f = potential[i][j];
      if (std::isnan(f) || f == HUGE_VAL) throw InvalidInput("potential entries must be finite or -inf");
      a[i][j] = std::exp(f);
    }
  }
  if (!primitive(a)) throw NotMixing("potential not mixing: transfer matrix is not primitive");

  GibbsSpec spec;
  spec.potential = potential;
  auto [lambda, right] = perron(a, false);
  auto [lambda_left, left] = perron(a, true);
  (void)lambda_left;
  const double dot = std::inner_product(left.begin(), left.end(), right.begin(), 0.0);
  for (double& x : left) x /= dot;
  spec.lambda = lambda;
  spec.pressure = std::log(lambda);
  spec.left = std::move(left);
  spec.right = std::move(right);
  return spec;
}

double gibbs_pressure(const Matrix& potential) { return solve_gibbs(potential).pressure; }

GibbsMeasure::GibbsMeasure(const Matrix& potential) : spec_(solve_gibbs(potential)) {
  const std::size_t n = spec_.right.size();
  initial_.resize(n);
  transition_.assign(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    initial_[i] = spec_.left[i] * spec_.right[i];
    for (std::size_t j = 0; j < n; ++j) {
      transition_[i][j] =
          std::exp(spec_.potential[i][j]) * spec_.right[j] / (spec_.lambda * spec_.right[i]);
    }
  }
}

double GibbsMeasure::birkhoff_sum(const Word& u) const {
  double s = 0.0;
  for (std::size_t m = 0; m < u.depth(); ++m) {
    const Symbol next = (m + 1 < u.depth()) ? u[m + 1] : u[0];
    s += spec_.potential[u[m] - 1][next - 1];
  }
  return s;
}

// ---------------------------------------------------------------------------

double SymbolicMeasure::step(std::size_t level, Symbol previous, Symbol symbol) const {
  if (const auto* p = product()) return p->vector(level)[symbol - 1];
  const auto& g = std::get<GibbsMeasure>(kind_);
  if (level == 1) return g.initial()[symbol - 1];
  return g.transition()[previous - 1][symbol - 1];
}

double SymbolicMeasure::cylinder_mass(const Word& u) const {
  double mass = 1.0;
  Symbol previous = 0;
  for (std::size_t j = 0; j < u.depth(); ++j) {
    mass *= step(j + 1, previous, u[j]);
    previous = u[j];
  }
  return mass;
}

void SymbolicMeasure::check_compatible(const LevelSchedule& schedule, std::size_t levels) const {
  for (std::size_t level = 1; level <= levels; ++level) {
    const std::size_t want = schedule.alphabet_size(level);
    const std::size_t have =
        product() ? product()->vector(level).size() : std::get<GibbsMeasure>(kind_).alphabet_size();
    if (want != have) {
      throw InvalidInput("measure alphabet (" + std::to_string(have) + ") differs from level " +
                         std::to_string(level) + " alphabet (" + std::to_string(want) + ")");
    }
  }
}

// ---------------------------------------------------------------------------

GibbsCertificate gibbs_certificate(const GibbsMeasure& measure, std::size_t depth,
                                   std::size_t budget) {
  const auto& spec = measure.spec();
  const std::size_t n = measure.alphabet_size();
  GibbsCertificate out;
  out.depth = depth;
  out.ratio_min = HUGE_VAL;
  out.ratio_max = 0.0;

  std::vector<Symbol> word;
  // open_sum = sum_{m<k-1} f(u_m, u_{m+1}); the periodic closing term is added per node.
  std::function<void(double, double)> descend = [&](double mass, double open_sum) {
    for (Symbol s = 1; s <= n; ++s) {
      double m = 0.0;
      double sum = open_sum;
      if (word.empty()) {
        m = measure.initial()[s - 1];
      } else {
        m = mass * measure.transition()[word.back() - 1][s - 1];
        sum += spec.potential[word.back() - 1][s - 1];
      }
      word.push_back(s);
      const std::size_t k = word.size();
      if (++out.cylinders > budget) throw BudgetExceeded("budget exceeded in gibbs certificate");
      const double closing = spec.potential[s - 1][word.front() - 1];
      if (m > 0.0 && std::isfinite(sum + closing)) {
        const double log_ratio =
            std::log(m) + static_cast<double>(k) * spec.pressure - (sum + closing);
        const double ratio = std::exp(log_ratio);
        out.ratio_min = std::min(out.ratio_min, ratio);
        out.ratio_max = std::max(out.ratio_max, ratio);
      }
      if (k < depth && m > 0.0) descend(m, sum);
      word.pop_back();
    }
  };
  descend(1.0, 0.0);
  if (out.ratio_max == 0.0) throw InvalidInput("gibbs certificate found no positive cylinder");
  out.a = std::min(out.ratio_min, 1.0 / out.ratio_max);
  return out;
}

}  // namespace qdim
