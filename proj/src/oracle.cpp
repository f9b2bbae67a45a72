#include "vbm/oracle.hpp"

#include <queue>
#include <stdexcept>

#include "vbm/march.hpp"
#include "vbm/visibility.hpp"

namespace vbm {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

struct Entry {
    double d;
    int idx;
};
struct EntryOrder {
    bool operator()(const Entry& a, const Entry& b) const {
        if (a.d != b.d) return a.d > b.d;
        return a.idx > b.idx;
    }
};

void check_source(const OccupancyGrid& grid, Cell source, const char* who) {
    if (!grid.in_bounds(source))
        throw std::invalid_argument(std::string(who) + ": source out of bounds");
    if (grid.occupied(source)) throw std::invalid_argument(std::string(who) + ": source occupied");
}

}  // namespace

std::vector<double> oracle_one_to_all(const OccupancyGrid& grid, Cell source,
                                      const Metric& metric) {
    check_source(grid, source, "oracle");
    const std::size_t free_cells = grid.free_count();
    if (free_cells > kOracleFreeCellCap)
        throw std::runtime_error("oracle: refusing to run on " + std::to_string(free_cells) +
                                 " free cells (all-pairs line of sight is only tractable up to " +
                                 std::to_string(kOracleFreeCellCap) + ")");

    const int n = static_cast<int>(grid.size());
    std::vector<int> free_idx;
    free_idx.reserve(free_cells);
    for (int i = 0; i < n; ++i)
        if (!grid.occupied(grid.cell(i))) free_idx.push_back(i);

    std::vector<double> dist(grid.size(), kInf);
    std::vector<std::uint8_t> settled(grid.size(), 0);
    std::priority_queue<Entry, std::vector<Entry>, EntryOrder> queue;
    dist[static_cast<std::size_t>(grid.index(source))] = 0.0;
    queue.push({0.0, grid.index(source)});

    while (!queue.empty()) {
        const Entry e = queue.top();
        queue.pop();
        const auto ui = static_cast<std::size_t>(e.idx);
        if (settled[ui]) continue;
        if (e.d > dist[ui]) continue;
        settled[ui] = 1;
        const Cell u = grid.cell(e.idx);
        for (const int vi : free_idx) {
            const auto v = static_cast<std::size_t>(vi);
            if (settled[v]) continue;
            const Cell vc = grid.cell(vi);
            const double cand = e.d + metric.distance(u, vc);
            if (cand >= dist[v]) continue;
            if (!los_exact(grid, u, vc)) continue;
            dist[v] = cand;
            queue.push({cand, vi});
        }
    }
    return dist;
}

std::vector<double> octile_field(const OccupancyGrid& grid, Cell source) {
    check_source(grid, source, "octile_field");
    std::vector<double> dist(grid.size(), kInf);
    std::vector<std::uint8_t> settled(grid.size(), 0);
    std::priority_queue<Entry, std::vector<Entry>, EntryOrder> queue;
    dist[static_cast<std::size_t>(grid.index(source))] = 0.0;
    queue.push({0.0, grid.index(source)});

    std::array<Cell, 8> nbrs;
    while (!queue.empty()) {
        const Entry e = queue.top();
        queue.pop();
        const auto ui = static_cast<std::size_t>(e.idx);
        if (settled[ui]) continue;
        if (e.d > dist[ui]) continue;
        settled[ui] = 1;
        const Cell u = grid.cell(e.idx);
        const int count = neighbors8_into(grid, u, /*no_corner_cut=*/true, nbrs);
        for (int k = 0; k < count; ++k) {
            const Cell v = nbrs[static_cast<std::size_t>(k)];
            const auto vi = static_cast<std::size_t>(grid.index(v));
            const double step = (v.x != u.x && v.y != u.y) ? kSqrt2 : 1.0;
            const double cand = e.d + step;
            if (cand < dist[vi]) {
                dist[vi] = cand;
                queue.push({cand, static_cast<int>(vi)});
            }
        }
    }
    return dist;
}

std::optional<double> astar8(const OccupancyGrid& grid, Cell source, Cell goal) {
    check_source(grid, source, "astar8");
    if (!grid.in_bounds(goal)) throw std::invalid_argument("astar8: goal out of bounds");
    if (grid.occupied(goal)) return std::nullopt;

    const auto h = [&](Cell c) {
        const double adx = std::abs(c.x - goal.x);
        const double ady = std::abs(c.y - goal.y);
        return std::abs(adx - ady) + kSqrt2 * (adx < ady ? adx : ady);
    };

    std::vector<double> gscore(grid.size(), kInf);
    std::vector<std::uint8_t> settled(grid.size(), 0);
    std::priority_queue<Entry, std::vector<Entry>, EntryOrder> queue;
    gscore[static_cast<std::size_t>(grid.index(source))] = 0.0;
    queue.push({h(source), grid.index(source)});

    std::array<Cell, 8> nbrs;
    while (!queue.empty()) {
        const Entry e = queue.top();
        queue.pop();
        const auto ui = static_cast<std::size_t>(e.idx);
        if (settled[ui]) continue;
        settled[ui] = 1;
        if (e.idx == grid.index(goal)) return gscore[ui];
        const Cell u = grid.cell(e.idx);
        const int count = neighbors8_into(grid, u, /*no_corner_cut=*/true, nbrs);
        for (int k = 0; k < count; ++k) {
            const Cell v = nbrs[static_cast<std::size_t>(k)];
            const auto vi = static_cast<std::size_t>(grid.index(v));
            if (settled[vi]) continue;
            const double step = (v.x != u.x && v.y != u.y) ? kSqrt2 : 1.0;
            const double cand = gscore[ui] + step;
            if (cand < gscore[vi]) {
                gscore[vi] = cand;
                queue.push({cand + h(v), static_cast<int>(vi)});
            }
        }
    }
    return std::nullopt;
}

}  // namespace vbm
