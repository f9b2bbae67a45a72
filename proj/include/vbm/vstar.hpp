#pragma once

#include "vbm/march.hpp"

namespace vbm {

/// Result of a greedy single-goal query. `explored` holds the partial
/// distance field over the cells the search actually settled.
struct VStarResult {
    bool reachable = false;
    Path path;            // source-first waypoints; empty when unreachable
    double length = kInf; // equals the one-to-all march distance at the goal
    std::size_t popped_count = 0;
    MarchResult explored;
};

/// Greedy variant of the march: identical expansion rule, but the queue is
/// keyed by dist(c) + distance(metric, c, goal) and the search stops as soon
/// as the goal settles.
VStarResult vstar(const OccupancyGrid& grid, Cell source, Cell goal,
                  const MarchOptions& options = {});

}  // namespace vbm
