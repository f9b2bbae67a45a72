#pragma once

#include <string>
#include <vector>

#include "vbm/grid.hpp"
#include "vbm/march.hpp"
#include "vbm/metric.hpp"

namespace vbm {

struct ScalingRow {
    int side = 0;            // grid side length
    std::size_t cells = 0;   // side * side
    double mean_us = 0.0;
    double std_us = 0.0;
    double us_per_cell = 0.0;
};

struct ScalingReport {
    std::vector<ScalingRow> rows;
    double loglog_slope = 0.0;   // of log(mean time) vs log(cells)
    double r_squared = 0.0;
    double us_per_cell = 0.0;    // least-squares through the origin, time vs cells
};

/// Times full marches over empty square grids of the given side lengths
/// (worst case: every cell is traversed). Requires at least 3 strictly
/// increasing sizes and at least 2 repetitions. Timing covers the march
/// itself, including queue initialization, not map construction.
ScalingReport run_scaling(const std::vector<int>& sides, int reps, const Metric& metric,
                          VisibilityBackend backend);

/// CSV with commented header and fit line: `n,mean_us,std_us,us_per_cell`.
std::string scaling_csv(const ScalingReport& report);

struct PathsetRow {
    Cell goal;
    bool ok = false;
    double length = 0.0;
    std::string error;  // "occupied" / "unreachable" / "out of bounds"
};

struct PathsetReport {
    std::vector<PathsetRow> rows;
    std::size_t ok_count = 0;
    double mean_length = 0.0;  // over successful rows
    std::size_t march_count = 0;
    double march_ms = 0.0;
    double total_ms = 0.0;
};

/// One march serves every goal: runs a single march from `source`, then
/// extracts one path per goal. Bad endpoints produce per-row error markers
/// and the run continues.
PathsetReport run_pathset(const OccupancyGrid& grid, Cell source, const std::vector<Cell>& goals,
                          const Metric& metric, VisibilityBackend backend);

/// CSV rows `goal_x,goal_y,length|<error>` plus commented summary lines.
std::string pathset_csv(const PathsetReport& report);

}  // namespace vbm
