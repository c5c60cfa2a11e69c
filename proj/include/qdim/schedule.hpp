#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "qdim/interval.hpp"
#include "qdim/map1d.hpp"

namespace qdim {

using MapFamily = std::vector<Map1D>;

/// The sequence {Phi_k} of per-level map families over a base interval J.
///
/// Two descriptions are accepted. The finite one is an explicit prefix
/// Phi_1..Phi_m followed by a periodic tail of period p >= 1. The programmatic
/// one is a level callback; families it returns are cached, so the callback is
/// invoked at most once per level.
class LevelSchedule {
public:
  using LevelCallback = std::function<MapFamily(std::size_t level)>;

  LevelSchedule(Interval base, std::vector<MapFamily> prefix, std::vector<MapFamily> tail);
  LevelSchedule(Interval base, LevelCallback callback);

  /// Phi_k = Phi_1 for every k.
  static LevelSchedule autonomous(Interval base, MapFamily family);

  /// Family at a 1-based level.
  const MapFamily& family(std::size_t level) const;
  const Map1D& map(std::size_t level, std::size_t symbol) const {
    return family(level)[symbol - 1];
  }
  std::size_t alphabet_size(std::size_t level) const { return family(level).size(); }

  const Interval& base() const noexcept { return base_; }
  bool has_tail() const noexcept { return !tail_.empty(); }
  bool is_autonomous() const noexcept { return prefix_.empty() && tail_.size() == 1; }
  std::size_t prefix_length() const noexcept { return prefix_.size(); }
  std::size_t period() const noexcept { return tail_.size(); }

  /// Levels 1..n cover every distinct family of a prefix/tail schedule.
  std::size_t distinct_levels() const noexcept { return prefix_.size() + tail_.size(); }

  /// True when every map at levels 1..up_to is a similarity. For prefix/tail
  /// schedules the answer for any up_to is read from the finite description.
  bool similarity_only(std::size_t up_to) const;

private:
  struct CallbackCache;

  Interval base_;
  std::vector<MapFamily> prefix_;
  std::vector<MapFamily> tail_;
  std::shared_ptr<CallbackCache> callback_;
};

/// A schedule plus the sampling settings used for derivative suprema.
struct System {
  LevelSchedule schedule;
  /// Grid size N for sup/inf of composed derivatives on J.
  std::size_t grid_points = 257;

  const Interval& base() const noexcept { return schedule.base(); }
};

/// Default cap on the number of words a single enumeration may produce.
inline constexpr std::size_t kDefaultWordBudget = std::size_t{1} << 24;

}  // namespace qdim
