#include "qdim/map1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdim/error.hpp"

namespace qdim {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Dense sampling for smooth maps, whose derivative has no closed-form extremum.
constexpr std::size_t kSmoothSamples = 4097;

}  // namespace

Map1D Map1D::similarity(double ratio, double offset, int orientation) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidInput("similarity ratio must lie in (0, 1)");
  if (orientation != 1 && orientation != -1) throw InvalidInput("orientation must be +1 or -1");
  return Map1D(Similarity{ratio, orientation}, offset);
}

Map1D Map1D::mobius(double shift, double offset) {
  if (!(shift >= 2.0)) throw InvalidInput("mobius shift must be >= 2");
  return Map1D(Mobius{shift}, offset);
}

Map1D Map1D::smooth(std::function<double(double)> value, std::function<double(double)> derivative,
                    double offset, double log_derivative_lipschitz) {
  if (!value || !derivative) throw InvalidInput("smooth map needs value and derivative oracles");
  return Map1D(Smooth{std::move(value), std::move(derivative), log_derivative_lipschitz}, offset);
}

double Map1D::operator()(double x) const {
  return offset_ + std::visit(overloaded{
                                  [x](const Similarity& s) { return s.orientation * s.ratio * x; },
                                  [x](const Mobius& m) { return 1.0 / (x + m.shift); },
                                  [x](const Smooth& s) { return s.value(x); },
                              },
                              kind_);
}

double Map1D::derivative(double x) const {
  return std::visit(overloaded{
                        [](const Similarity& s) { return s.orientation * s.ratio; },
                        [x](const Mobius& m) { return -1.0 / ((x + m.shift) * (x + m.shift)); },
                        [x](const Smooth& s) { return s.derivative(x); },
                    },
                    kind_);
}

double Map1D::derivative_sup(const Interval& J) const {
  return std::visit(
      overloaded{
          [](const Similarity& s) { return s.ratio; },
          [&J](const Mobius& m) {
            // |phi'| = (x + a)^-2 is decreasing on J when x + a > 0 there.
            const double lo = J.low + m.shift;
            if (lo <= 0.0) throw NotConformal("not conformal: mobius pole inside J");
            return 1.0 / (lo * lo);
          },
          [this, &J](const Smooth& s) {
            double sup = 0.0;
            const double h = J.length() / static_cast<double>(kSmoothSamples - 1);
            for (std::size_t i = 0; i < kSmoothSamples; ++i) {
              sup = std::max(sup, std::abs(s.derivative(J.low + static_cast<double>(i) * h)));
            }
            return sup * std::exp(0.5 * h * log_derivative_lipschitz(J));
          },
      },
      kind_);
}

double Map1D::log_derivative_lipschitz(const Interval& J) const {
  return std::visit(
      overloaded{
          [](const Similarity&) { return 0.0; },
          [&J](const Mobius& m) {
            // d/dx log|phi'| = -2 / (x + a)
            const double lo = J.low + m.shift;
            if (lo <= 0.0) throw NotConformal("not conformal: mobius pole inside J");
            return 2.0 / lo;
          },
          [&J](const Smooth& s) {
            if (s.log_derivative_lipschitz >= 0.0) return s.log_derivative_lipschitz;
            // Difference quotients of log|phi'| on a dense grid.
            const double h = J.length() / static_cast<double>(kSmoothSamples - 1);
            double prev = std::log(std::abs(s.derivative(J.low)));
            double lip = 0.0;
            for (std::size_t i = 1; i < kSmoothSamples; ++i) {
              const double cur = std::log(std::abs(s.derivative(J.low + static_cast<double>(i) * h)));
              lip = std::max(lip, std::abs(cur - prev) / h);
              prev = cur;
            }
            return lip;
          },
      },
      kind_);
}

Interval Map1D::image(const Interval& J) const { return span_of((*this)(J.low), (*this)(J.high)); }

std::optional<double> Map1D::ratio() const noexcept {
  if (const auto* s = std::get_if<Similarity>(&kind_)) return s->ratio;
  return std::nullopt;
}

std::string Map1D::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&os](const Similarity& s) {
                   os << (s.orientation < 0 ? "-" : "") << s.ratio << "*x";
                 },
                 [&os](const Mobius& m) { os << "1/(x+" << m.shift << ")"; },
                 [&os](const Smooth&) { os << "smooth(x)"; },
             },
             kind_);
  if (offset_ != 0.0) os << " + " << offset_;
  return os.str();
}

}  // namespace qdim
