#include "vbm/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vbm {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_us(Clock::time_point t0, Clock::time_point t1) {
    return std::chrono::duration<double, std::micro>(t1 - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

}  // namespace

ScalingReport run_scaling(const std::vector<int>& sides, int reps, const Metric& metric,
                          VisibilityBackend backend) {
    if (sides.size() < 3)
        throw std::invalid_argument("run_scaling: need at least 3 sizes for a meaningful fit");
    for (std::size_t i = 0; i + 1 < sides.size(); ++i)
        if (sides[i] >= sides[i + 1])
            throw std::invalid_argument("run_scaling: sizes must be strictly increasing");
    if (sides.front() < 2) throw std::invalid_argument("run_scaling: sizes must be at least 2");
    if (reps < 2) throw std::invalid_argument("run_scaling: need at least 2 repetitions");

    MarchOptions options;
    options.metric = metric;
    options.backend = backend;

    ScalingReport report;
    for (const int side : sides) {
        const OccupancyGrid grid = OccupancyGrid::empty(side, side);
        const std::vector<Cell> sources{{side / 2, side / 2}};
        double sum = 0.0, sum_sq = 0.0;
        for (int rep = 0; rep < reps; ++rep) {
            const auto t0 = Clock::now();
            const MarchResult result = march(grid, sources, options);
            const auto t1 = Clock::now();
            const double us = elapsed_us(t0, t1);
            sum += us;
            sum_sq += us * us;
            (void)result;
        }
        ScalingRow row;
        row.side = side;
        row.cells = static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
        row.mean_us = sum / reps;
        const double var = (sum_sq - sum * sum / reps) / (reps - 1);
        row.std_us = var > 0.0 ? std::sqrt(var) : 0.0;
        row.us_per_cell = row.mean_us / static_cast<double>(row.cells);
        report.rows.push_back(row);
    }

    // log-log least squares of mean time against cell count
    const auto k = static_cast<double>(report.rows.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const ScalingRow& row : report.rows) {
        const double x = std::log(static_cast<double>(row.cells));
        const double y = std::log(row.mean_us);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    report.loglog_slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    const double intercept = (sy - report.loglog_slope * sx) / k;
    double ss_res = 0, ss_tot = 0;
    for (const ScalingRow& row : report.rows) {
        const double x = std::log(static_cast<double>(row.cells));
        const double y = std::log(row.mean_us);
        const double fit = report.loglog_slope * x + intercept;
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - sy / k) * (y - sy / k);
    }
    report.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;

    double stn = 0, snn = 0;
    for (const ScalingRow& row : report.rows) {
        const auto cells = static_cast<double>(row.cells);
        stn += row.mean_us * cells;
        snn += cells * cells;
    }
    report.us_per_cell = stn / snn;
    return report;
}

std::string scaling_csv(const ScalingReport& report) {
    std::string out = "# n,mean_us,std_us,us_per_cell\n";
    for (const ScalingRow& row : report.rows) {
        out += std::to_string(row.cells) + "," + fmt("%.3f", row.mean_us) + "," +
               fmt("%.3f", row.std_us) + "," + fmt("%.6f", row.us_per_cell) + "\n";
    }
    out += "# fit: loglog_slope=" + fmt("%.4f", report.loglog_slope) +
           " r_squared=" + fmt("%.5f", report.r_squared) +
           " us_per_cell=" + fmt("%.6f", report.us_per_cell) + "\n";
    return out;
}

PathsetReport run_pathset(const OccupancyGrid& grid, Cell source, const std::vector<Cell>& goals,
                          const Metric& metric, VisibilityBackend backend) {
    MarchOptions options;
    options.metric = metric;
    options.backend = backend;

    PathsetReport report;
    const auto t0 = Clock::now();
    const MarchResult result = march(grid, {source}, options);
    const auto t1 = Clock::now();
    report.march_count = 1;
    report.march_ms = elapsed_us(t0, t1) / 1000.0;

    double length_sum = 0.0;
    for (const Cell& goal : goals) {
        PathsetRow row;
        row.goal = goal;
        if (!grid.in_bounds(goal)) {
            row.error = "out of bounds";
        } else if (grid.occupied(goal)) {
            row.error = "occupied";
        } else if (const auto path = extract_path(result, goal)) {
            row.ok = true;
            row.length = path->length;
            length_sum += path->length;
            ++report.ok_count;
        } else {
            row.error = "unreachable";
        }
        report.rows.push_back(std::move(row));
    }
    report.mean_length = report.ok_count ? length_sum / static_cast<double>(report.ok_count) : 0.0;
    report.total_ms = elapsed_us(t0, Clock::now()) / 1000.0;
    return report;
}

std::string pathset_csv(const PathsetReport& report) {
    std::string out = "# goal_x,goal_y,length_px\n";
    for (const PathsetRow& row : report.rows) {
        out += std::to_string(row.goal.x) + "," + std::to_string(row.goal.y) + ",";
        out += row.ok ? fmt("%.6f", row.length) : row.error;
        out += "\n";
    }
    out += "# mean_px=" + fmt("%.6f", report.mean_length) +
           " ok=" + std::to_string(report.ok_count) + "/" + std::to_string(report.rows.size()) +
           "\n";
    out += "# marches=" + std::to_string(report.march_count) +
           " march_ms=" + fmt("%.3f", report.march_ms) + " total_ms=" + fmt("%.3f", report.total_ms) +
           "\n";
    return out;
}

}  // namespace vbm
