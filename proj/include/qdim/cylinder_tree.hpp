#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "qdim/interval.hpp"
#include "qdim/maps.hpp"
#include "qdim/measures.hpp"
#include "qdim/schedule.hpp"
#include "qdim/word.hpp"

namespace qdim {

/// What the depth-first walker knows about the cylinder of a word u.
struct CylinderNode {
  std::span<const Symbol> symbols;  ///< u, 1-based symbols
  DerivNorm norm;                   ///< ||D phi_u||; the root has norm 1
  double derivative_inf = 1.0;      ///< grid inf of |Psi_u'| on J
  Interval interval;                ///< J_u
  double mass = 1.0;                ///< mu([u]), or 1 without a measure

  std::size_t depth() const noexcept { return symbols.size(); }
  Word word() const { return Word(symbols); }
};

struct WalkOptions {
  std::size_t first_level = 1;
  /// Descending past this depth throws ContractionViolated.
  std::size_t max_depth = 4096;
};

/// Depth-first, lexicographic walk of the cylinder tree starting at the root.
/// `visit` returns true to descend into the children of the node it receives.
/// Similarity prefixes are composed exactly; other maps are sampled on the
/// System's grid.
void walk_cylinders(const System& system, const SymbolicMeasure* measure,
                    const std::function<bool(const CylinderNode&)>& visit,
                    const WalkOptions& options = {});

}  // namespace qdim
