#include "qdim/symbolic.hpp"

#include <algorithm>
#include <limits>

#include "qdim/cylinder_tree.hpp"
#include "qdim/error.hpp"

namespace qdim {

std::size_t level_size(const LevelSchedule& schedule, std::size_t k) {
  std::size_t n = 1;
  for (std::size_t level = 1; level <= k; ++level) {
    const std::size_t a = schedule.alphabet_size(level);
    if (n > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
    n *= a;
  }
  return n;
}

std::vector<Word> enumerate_level(const LevelSchedule& schedule, std::size_t k, std::size_t budget) {
  const std::size_t count = level_size(schedule, k);
  if (count > budget) {
    throw BudgetExceeded("budget exceeded: level " + std::to_string(k) + " has more than " +
                         std::to_string(budget) + " words; use the product fast path");
  }
  std::vector<Word> out;
  out.reserve(count);
  // Odometer over the level alphabets, last symbol fastest.
  std::vector<Symbol> current(k, 1);
  for (std::size_t n = 0; n < count; ++n) {
    out.emplace_back(current);
    for (std::size_t j = k; j-- > 0;) {
      if (current[j] < schedule.alphabet_size(j + 1)) {
        ++current[j];
        break;
      }
      current[j] = 1;
    }
  }
  return out;
}

CutSet cut_set(const System& system, double delta, std::size_t budget) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("cut set needs 0 < delta < 1");
  CutSet out;
  out.delta = delta;
  out.k_min = std::numeric_limits<std::size_t>::max();
  walk_cylinders(system, nullptr, [&](const CylinderNode& node) {
    if (node.depth() == 0) return true;
    if (node.norm.value >= 1.0) {
      throw ContractionViolated("contraction violated: ||D phi_u|| >= 1 for u = " +
                                node.word().to_string());
    }
    if (node.norm.value > delta) return true;
    if (out.members.size() >= budget) {
      throw BudgetExceeded("budget exceeded: C(delta) has more than " + std::to_string(budget) +
                           " words");
    }
    out.members.push_back(node.word());
    out.k_min = std::min(out.k_min, node.depth());
    out.k_max = std::max(out.k_max, node.depth());
    return false;
  });
  return out;
}

}  // namespace qdim
