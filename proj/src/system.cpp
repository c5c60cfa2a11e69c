#include "qdim/system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdim/cylinder_tree.hpp"
#include "qdim/error.hpp"
#include "qdim/maps.hpp"
#include "qdim/symbolic.hpp"

namespace qdim {
namespace {

constexpr std::size_t kMaxListedFailures = 32;

void note(ValidationReport& report, std::string message) {
  if (report.failures.size() < kMaxListedFailures) report.failures.push_back(std::move(message));
}

std::string fmt_interval(const Interval& i) {
  std::ostringstream os;
  os << "[" << i.low << ", " << i.high << "]";
  return os.str();
}

std::size_t inspected_levels(const System& system, std::size_t depth) {
  const auto& s = system.schedule;
  return s.has_tail() ? std::max(s.distinct_levels(), std::size_t{1}) : std::max(depth, std::size_t{1});
}

}  // namespace

ValidationReport validate(const System& system, const ValidationOptions& options) {
  ValidationReport report;
  const Interval& J = system.base();
  const double tol = options.overlap_tolerance * std::max(1.0, J.length());
  const std::size_t levels = inspected_levels(system, options.depth);

  // (a) contraction and per-level image containment.
  report.contraction_ok = true;
  report.nesting_ok = true;
  for (std::size_t level = 1; level <= levels; ++level) {
    const auto& family = system.schedule.family(level);
    for (std::size_t i = 0; i < family.size(); ++i) {
      const auto tag = "map " + std::to_string(i + 1) + " at level " + std::to_string(level);
      try {
        const double c = family[i].derivative_sup(J);
        report.contraction = std::max(report.contraction, c);
        if (!(c < 1.0)) {
          report.contraction_ok = false;
          note(report, "contraction violated: " + tag + " has sup|phi'| = " + std::to_string(c));
        }
      } catch (const Error& e) {
        report.contraction_ok = false;
        note(report, tag + ": " + e.what());
      }
      const Interval image = family[i].image(J);
      if (!J.contains(image, tol)) {
        report.nesting_ok = false;
        note(report, "placement violates nesting: " + tag + " maps J to " + fmt_interval(image));
      }
    }
  }
  if (!report.contraction_ok || !report.nesting_ok) {
    report.osc = report.ssc = false;
    note(report, "separation not checked: structural checks failed");
    return report;
  }

  // (b)-(d) explicit nesting and sibling separation, one depth at a time.
  report.osc = true;
  report.ssc = true;
  std::vector<std::pair<Word, Interval>> frontier{{Word{}, J}};
  try {
    for (std::size_t depth = 0; depth < options.depth; ++depth) {
      const std::size_t width = system.schedule.alphabet_size(depth + 1);
      if (frontier.size() * width > options.budget) break;
      std::vector<std::pair<Word, Interval>> next;
      next.reserve(frontier.size() * width);
      for (const auto& [u, parent] : frontier) {
        std::vector<std::pair<Interval, Symbol>> kids;
        for (Symbol s = 1; s <= width; ++s) {
          Word child = u.child(s);
          const Interval ci = cylinder_interval(system, child);
          if (!parent.contains(ci, tol)) {
            report.nesting_ok = false;
            note(report, "nesting fails: J_" + child.to_string() + " not inside J_" + u.to_string());
          }
          kids.emplace_back(ci, s);
          next.emplace_back(std::move(child), ci);
        }
        std::sort(kids.begin(), kids.end(),
                  [](const auto& a, const auto& b) { return a.first.low < b.first.low; });
        for (std::size_t i = 0; i + 1 < kids.size(); ++i) {
          const auto& [a, sa] = kids[i];
          const auto& [b, sb] = kids[i + 1];
          const double overlap = interior_overlap(a, b);
          if (overlap > tol) {
            report.osc = false;
            note(report, "OSC fails: J_" + u.child(sa).to_string() + " " + fmt_interval(a) +
                             " and J_" + u.child(sb).to_string() + " " + fmt_interval(b) +
                             " overlap");
          }
          if (!(b.low > a.high + tol)) report.ssc = false;
        }
      }
      frontier = std::move(next);
      report.depth_verified = depth + 1;
    }
  } catch (const Error& e) {
    report.nesting_ok = false;
    note(report, e.what());
  }
  if (!report.osc) report.ssc = false;
  return report;
}

SystemDiagnostics condition_diagnostics(const System& system, std::size_t k_max,
                                        std::size_t budget) {
  if (k_max < 2) throw InvalidInput("condition diagnostics need k_max >= 2");
  SystemDiagnostics out;
  const auto& schedule = system.schedule;
  const Interval& J = system.base();

  std::vector<double> log_m(k_max, 0.0);
  if (schedule.similarity_only(k_max)) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= k_max; ++k) {
      double best = 0.0;
      for (const auto& m : schedule.family(k)) best = std::max(best, *m.ratio());
      acc += std::log(best);
      log_m[k - 1] = acc;
    }
  } else {
    std::vector<double> max_norm(k_max, 0.0);
    std::size_t visited = 0;
    walk_cylinders(system, nullptr, [&](const CylinderNode& node) {
      if (node.depth() == 0) return true;
      if (++visited > budget) throw BudgetExceeded("budget exceeded computing M_k");
      max_norm[node.depth() - 1] = std::max(max_norm[node.depth() - 1], node.norm.value);
      return node.depth() < k_max;
    });
    for (std::size_t k = 0; k < k_max; ++k) log_m[k] = std::log(max_norm[k]);
  }

  for (std::size_t k = 1; k <= k_max; ++k) {
    double c = HUGE_VAL;
    for (const auto& m : schedule.family(k)) c = std::min(c, m.derivative_sup(J));
    out.M.push_back(std::exp(log_m[k - 1]));
    out.c_bar.push_back(c);
    out.ratio.push_back(std::log(c) / log_m[k - 1]);
  }

  // Upper envelope must come down: the tail maximum sits below the head maximum.
  const std::size_t half = k_max / 2;
  const double head = *std::max_element(out.ratio.begin(), out.ratio.begin() + half);
  const double tail = *std::max_element(out.ratio.begin() + half, out.ratio.end());
  const double last = out.ratio.back();
  out.plausible = tail < head && last < 0.1;
  std::ostringstream os;
  if (out.plausible) {
    os << "plausible";
  } else {
    os << "fails: ratio_k = " << last << " at k = " << k_max
       << (tail < head ? "" : " (not decreasing)");
  }
  out.verdict = os.str();
  return out;
}

}  // namespace qdim
