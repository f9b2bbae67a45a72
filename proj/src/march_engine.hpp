#pragma once

// Internal wavefront engine shared by march() and vstar(). Not installed.

#include "vbm/march.hpp"

namespace vbm::detail {

/// Runs the wavefront expansion. With a goal, the queue is keyed by
/// dist + metric(cell, goal) and the loop stops once the goal settles;
/// without one it is keyed by dist and runs until the queue empties.
MarchResult run_wavefront(const OccupancyGrid& grid, const std::vector<Cell>& sources,
                          const MarchOptions& options, const Cell* goal, bool* goal_reached);

}  // namespace vbm::detail
