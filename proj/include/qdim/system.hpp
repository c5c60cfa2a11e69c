#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qdim/schedule.hpp"

namespace qdim {

struct ValidationOptions {
  std::size_t depth = 8;           ///< nesting/OSC verified for words up to this depth
  double overlap_tolerance = 1e-12;
  std::size_t budget = std::size_t{1} << 20;
};

/// Report-style result of checking the structural axioms. Nothing throws;
/// every failed check adds a line to `failures`.
struct ValidationReport {
  double contraction = 0.0;  ///< attained c = max sup|phi'| over inspected levels
  bool contraction_ok = false;
  bool nesting_ok = false;
  bool osc = false;  ///< sibling interiors pairwise disjoint
  bool ssc = false;  ///< sibling closed intervals pairwise disjoint
  std::size_t depth_verified = 0;  ///< deepest level whose cylinders were all inspected
  std::vector<std::string> failures;

  bool ok() const noexcept { return contraction_ok && nesting_ok && osc; }
};

ValidationReport validate(const System& system, const ValidationOptions& options = {});

/// Sequences behind the requirement that log c_k / log M_k vanish.
struct SystemDiagnostics {
  std::vector<double> M;      ///< M_k = max_{|u| = k} ||D phi_u||, k = 1..k_max
  std::vector<double> c_bar;  ///< c_k = min_j ||D phi_{k,j}||
  std::vector<double> ratio;  ///< log c_k / log M_k
  bool plausible = false;     ///< ratio non-increasing over the last half and < 0.1 at k_max
  std::string verdict;
};

/// M_k uses the exact product of per-level maximal ratios for similarity
/// schedules and a depth-k enumeration of sampled norms otherwise.
SystemDiagnostics condition_diagnostics(const System& system, std::size_t k_max,
                                        std::size_t budget = kDefaultWordBudget);

}  // namespace qdim
