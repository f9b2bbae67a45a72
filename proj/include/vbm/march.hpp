#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "vbm/grid.hpp"
#include "vbm/metric.hpp"
#include "vbm/visibility.hpp"

namespace vbm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct MarchOptions {
    Metric metric = Metric::euclidean();
    VisibilityBackend backend = VisibilityBackend::dp;
    double tau = 0.5;
    bool no_corner_cut = true;
    /// Assign distances to occupied cells from their best visible parent
    /// (visibility evaluated up to the cell's boundary) without ever
    /// expanding them.
    bool march_through_obstacles = false;
    /// Record the key of every non-stale pop (for diagnostics/tests).
    bool record_pop_keys = false;
    /// Extra exit criterion, checked right after a cell settles.
    std::function<bool(Cell)> stop;
};

/// Full output of a march: the distance field, the parent matrix, the pivot
/// set, and the visibility store built along the way. Immutable once
/// returned; safe to share across threads.
struct MarchResult {
    int width = 0;
    int height = 0;
    std::vector<double> dist;          // +inf for unreached cells
    std::vector<std::int32_t> parents; // linearized parent index, -1 unreached
    std::vector<std::uint8_t> visited; // settled (popped non-stale) cells
    std::vector<Cell> pivots;
    std::vector<std::uint8_t> pivot_mask;
    std::size_t popped_count = 0;
    VisibilityStore store;             // empty for the exact backend
    std::vector<double> pop_keys;      // filled when record_pop_keys is set
    Metric metric = Metric::euclidean();
    VisibilityBackend backend = VisibilityBackend::dp;

    int index(Cell c) const { return c.y * width + c.x; }
    Cell cell(int index) const { return {index % width, index / width}; }
    bool in_bounds(Cell c) const { return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height; }
    double dist_at(Cell c) const { return dist[static_cast<std::size_t>(index(c))]; }
    bool reached(Cell c) const { return parents[static_cast<std::size_t>(index(c))] >= 0; }
    /// Parent of a reached cell; a source is its own parent.
    Cell parent_of(Cell c) const { return cell(parents[static_cast<std::size_t>(index(c))]); }
};

/// One-to-all visibility-based marching from one or more sources.
/// Sources must be distinct, free, and in bounds.
MarchResult march(const OccupancyGrid& grid, const std::vector<Cell>& sources,
                  const MarchOptions& options = {});

/// Waypoint sequence from a source to a query cell (source first).
struct Path {
    std::vector<Cell> waypoints;
    double length = 0.0;
};

/// Backtracks the parent matrix from `goal` to a source. Returns nullopt
/// when the goal was never reached.
std::optional<Path> extract_path(const MarchResult& result, Cell goal);

}  // namespace vbm
