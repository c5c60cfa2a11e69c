#include "qdim/schedule.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

#include "qdim/error.hpp"

namespace qdim {
namespace {

void check_family(const MapFamily& family, std::size_t level) {
  if (family.size() < 2) {
    throw InvalidInput("level " + std::to_string(level) + " has fewer than 2 maps");
  }
}

}  // namespace

struct LevelSchedule::CallbackCache {
  LevelCallback callback;
  std::mutex mutex;
  std::deque<MapFamily> levels;  // deque keeps references stable while growing
};

LevelSchedule::LevelSchedule(Interval base, std::vector<MapFamily> prefix,
                             std::vector<MapFamily> tail)
    : base_(base), prefix_(std::move(prefix)), tail_(std::move(tail)) {
  if (!(base_.high > base_.low)) throw InvalidInput("base interval must have positive length");
  if (tail_.empty()) throw InvalidInput("tail rule required: period must be >= 1");
  for (std::size_t i = 0; i < prefix_.size(); ++i) check_family(prefix_[i], i + 1);
  for (std::size_t i = 0; i < tail_.size(); ++i) check_family(tail_[i], prefix_.size() + i + 1);
}

LevelSchedule::LevelSchedule(Interval base, LevelCallback callback)
    : base_(base), callback_(std::make_shared<CallbackCache>()) {
  if (!(base_.high > base_.low)) throw InvalidInput("base interval must have positive length");
  if (!callback) throw InvalidInput("level callback is empty");
  callback_->callback = std::move(callback);
}

LevelSchedule LevelSchedule::autonomous(Interval base, MapFamily family) {
  return LevelSchedule(base, {}, {std::move(family)});
}

const MapFamily& LevelSchedule::family(std::size_t level) const {
  if (level == 0) throw InvalidInput("levels are 1-based");
  if (!callback_) {
    if (level <= prefix_.size()) return prefix_[level - 1];
    return tail_[(level - prefix_.size() - 1) % tail_.size()];
  }
  std::lock_guard lock(callback_->mutex);
  auto& cache = callback_->levels;
  while (cache.size() < level) {
    MapFamily fam = callback_->callback(cache.size() + 1);
    check_family(fam, cache.size() + 1);
    cache.push_back(std::move(fam));
  }
  return cache[level - 1];
}

bool LevelSchedule::similarity_only(std::size_t up_to) const {
  const std::size_t last = callback_ ? up_to : std::min(up_to, distinct_levels());
  for (std::size_t level = 1; level <= last; ++level) {
    for (const auto& m : family(level)) {
      if (!m.is_similarity()) return false;
    }
  }
  return true;
}

}  // namespace qdim
