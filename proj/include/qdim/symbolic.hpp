#pragma once

#include <cstddef>
#include <vector>

#include "qdim/schedule.hpp"
#include "qdim/word.hpp"

namespace qdim {

/// All words of depth k in lexicographic order. Throws BudgetExceeded when
/// prod_{j<=k} #I_j exceeds the budget; callers should then switch to the
/// product fast path.
std::vector<Word> enumerate_level(const LevelSchedule& schedule, std::size_t k,
                                  std::size_t budget = kDefaultWordBudget);

/// Number of words of depth k, saturating at SIZE_MAX.
std::size_t level_size(const LevelSchedule& schedule, std::size_t k);

/// delta-cut set C(delta) = { u : ||D phi_u|| <= delta < ||D phi_{u*}|| }.
struct CutSet {
  std::vector<Word> members;  ///< lexicographic
  double delta = 0.0;
  std::size_t k_min = 0;
  std::size_t k_max = 0;
};

/// Builds C(delta) by depth-first descent that stops at the first word whose
/// norm drops to <= delta. The root counts as norm 1, so any delta in (0, 1)
/// is accepted. Throws ContractionViolated when a composition stops shrinking.
CutSet cut_set(const System& system, double delta, std::size_t budget = kDefaultWordBudget);

}  // namespace qdim
