#pragma once

#include <cstddef>

namespace horonerve {

/// Upper bound on the number of vertices any builder may materialize.
/// Defaults to 200000; the environment variable HORONERVE_VERTEX_BUDGET
/// overrides it (read once per call, so tests may change it).
std::size_t vertex_budget();

/// Faces any complex builder may materialize: 20x the vertex budget.
inline std::size_t face_budget() { return 20 * vertex_budget(); }

/// Graphs at or below this size get an all-pairs distance table up front.
inline constexpr std::size_t kAllPairsThreshold = 4096;

} // namespace horonerve
