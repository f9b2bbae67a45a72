#pragma once

#include <optional>
#include <vector>

#include "vbm/grid.hpp"
#include "vbm/metric.hpp"

namespace vbm {

/// Brute-force ground truth is only tractable on small grids; one-to-all
/// refuses anything larger.
inline constexpr std::size_t kOracleFreeCellCap = 4096;

/// Exact taut-path distances from `source` to every cell under the
/// cell-center visibility model: Dijkstra over the complete visibility graph
/// of free cells (edges where los_exact holds, weighted by the metric).
/// Returns one distance per cell, +inf for occupied or unreachable cells.
/// Throws when the grid has more than kOracleFreeCellCap free cells.
std::vector<double> oracle_one_to_all(const OccupancyGrid& grid, Cell source,
                                      const Metric& metric);

/// Standard 8-connected A* with octile weights (1, sqrt 2) and no corner
/// cutting. Returns nullopt when the goal is unreachable.
std::optional<double> astar8(const OccupancyGrid& grid, Cell source, Cell goal);

/// One-to-all variant of the same 8-connected search (plain Dijkstra).
std::vector<double> octile_field(const OccupancyGrid& grid, Cell source);

}  // namespace vbm
