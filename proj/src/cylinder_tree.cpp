#include "qdim/cylinder_tree.hpp"

#include <cmath>
#include <vector>

#include "qdim/error.hpp"

namespace qdim {
namespace {

struct Frame {
  bool affine = true;  // Psi_u(x) = a x + b exactly
  double a = 1.0;
  double b = 0.0;
  double log_lipschitz = 0.0;
  double mass = 1.0;
};

class Walker {
public:
  Walker(const System& system, const SymbolicMeasure* measure,
         const std::function<bool(const CylinderNode&)>& visit, const WalkOptions& options)
      : system_(system),
        measure_(measure),
        visit_(visit),
        options_(options),
        J_(system.base()),
        h_(system.base().length() / static_cast<double>(system.grid_points - 1)) {}

  void run() {
    Frame root;
    root.b = 0.0;
    CylinderNode node;
    node.interval = J_;
    if (visit_(node)) expand(root);
  }

private:
  void expand(const Frame& parent) {
    const std::size_t depth = symbols_.size();
    if (depth >= options_.max_depth) {
      throw ContractionViolated("contraction violated: cylinder tree deeper than " +
                                std::to_string(options_.max_depth));
    }
    const std::size_t level = options_.first_level + depth;
    const MapFamily& family = system_.schedule.family(level);
    const Symbol previous = symbols_.empty() ? 0 : symbols_.back();

    for (std::size_t i = 0; i < family.size(); ++i) {
      const Map1D& g = family[i];
      const auto symbol = static_cast<Symbol>(i + 1);
      detail::require_nested(g, J_, level, symbol);

      symbols_.push_back(symbol);
      chain_.push_back(&g);

      Frame child;
      child.mass = parent.mass * (measure_ ? measure_->step(level, previous, symbol) : 1.0);
      CylinderNode node;
      if (parent.affine && g.is_similarity()) {
        const double slope = g.derivative(0.0);
        child.a = parent.a * slope;
        child.b = parent.a * g.offset() + parent.b;
        const double norm = std::abs(child.a);
        node.norm = {norm, norm};
        node.derivative_inf = norm;
        node.interval = span_of(child.a * J_.low + child.b, child.a * J_.high + child.b);
      } else {
        child.affine = false;
        const auto range = detail::sample_chain_derivative(chain_, J_, system_.grid_points);
        child.log_lipschitz =
            parent.log_lipschitz * g.derivative_sup(J_) + g.log_derivative_lipschitz(J_);
        node.norm = {range.sup, range.sup * std::exp(0.5 * child.log_lipschitz * h_)};
        node.derivative_inf = range.inf;
        node.interval = span_of(detail::apply_chain(chain_, J_.low),
                                detail::apply_chain(chain_, J_.high));
      }
      node.symbols = symbols_;
      node.mass = child.mass;

      if (visit_(node)) expand(child);

      chain_.pop_back();
      symbols_.pop_back();
    }
  }

  const System& system_;
  const SymbolicMeasure* measure_;
  const std::function<bool(const CylinderNode&)>& visit_;
  WalkOptions options_;
  Interval J_;
  double h_;
  std::vector<Symbol> symbols_;
  std::vector<const Map1D*> chain_;
};

}  // namespace

void walk_cylinders(const System& system, const SymbolicMeasure* measure,
                    const std::function<bool(const CylinderNode&)>& visit,
                    const WalkOptions& options) {
  if (options.first_level == 0) throw InvalidInput("levels are 1-based");
  if (system.grid_points < 2) throw InvalidInput("derivative grid needs at least 2 points");
  Walker(system, measure, visit, options).run();
}

}  // namespace qdim
