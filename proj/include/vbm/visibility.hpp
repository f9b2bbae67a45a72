#pragma once

#include <cstdint>
#include <vector>

#include "vbm/grid.hpp"

namespace vbm {

enum class VisibilityBackend { exact, dp };

/// Memoized per-pivot visibility scores keyed by a 64-bit composite of pivot
/// index and cell index. Open-addressing with linear probing; entries are
/// never evicted during a march.
class VisibilityStore {
public:
    explicit VisibilityStore(double tau = 0.5);

    double tau() const { return tau_; }
    std::size_t size() const { return count_; }

    static std::uint64_t make_key(int pivot_index, int cell_index) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(pivot_index)) << 32) |
               static_cast<std::uint32_t>(cell_index);
    }

    /// Returns nullptr when the key is absent.
    const double* find(std::uint64_t key) const;
    void insert(std::uint64_t key, double value);

    // Instrumentation for memoization tests.
    std::size_t inserts() const { return inserts_; }

private:
    static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};

    void grow();

    double tau_;
    std::vector<std::uint64_t> keys_;
    std::vector<double> values_;
    std::size_t mask_ = 0;
    std::size_t count_ = 0;
    std::size_t inserts_ = 0;
};

namespace detail {

// Walks every cell whose open unit square the closed segment a->b crosses,
// in order, using exact integer arithmetic. Cell (x, y) spans the open square
// (x-1/2, x+1/2) x (y-1/2, y+1/2). When the segment passes exactly through a
// lattice corner it steps diagonally: the two side cells' open squares are
// not entered, and `corner(side1, side2)` is invoked instead. Both visitors
// return false to stop the walk early.
template <class CellFn, class CornerFn>
inline bool walk_supercover(Cell a, Cell b, CellFn&& visit, CornerFn&& corner) {
    if (!visit(a)) return false;
    const int dx = b.x - a.x;
    const int dy = b.y - a.y;
    const int sx = dx > 0 ? 1 : -1;
    const int sy = dy > 0 ? 1 : -1;
    const std::int64_t adx = dx > 0 ? dx : -dx;
    const std::int64_t ady = dy > 0 ? dy : -dy;

    int cx = a.x;
    int cy = a.y;
    std::int64_t nx = 1;  // next vertical boundary crossing, at t = (2*nx - 1) / (2*adx)
    std::int64_t ny = 1;  // next horizontal boundary crossing, at t = (2*ny - 1) / (2*ady)
    while (nx <= adx || ny <= ady) {
        if (ny > ady) {
            cx += sx;
            ++nx;
        } else if (nx > adx) {
            cy += sy;
            ++ny;
        } else {
            const std::int64_t tx = (2 * nx - 1) * ady;
            const std::int64_t ty = (2 * ny - 1) * adx;
            if (tx < ty) {
                cx += sx;
                ++nx;
            } else if (tx > ty) {
                cy += sy;
                ++ny;
            } else {
                if (!corner(Cell{cx + sx, cy}, Cell{cx, cy + sy})) return false;
                cx += sx;
                cy += sy;
                ++nx;
                ++ny;
            }
        }
        if (!visit(Cell{cx, cy})) return false;
    }
    return true;
}

// Walks the cells crossed by a ray leaving the center of `from` with
// direction `(ddx, ddy)` given in half-cell units (doubled coordinates), so
// rays aimed exactly at lattice corners stay in integer arithmetic. Corner
// crossings step diagonally like walk_supercover. The walk stops at grid
// bounds, at an occupied cell, at a two-sided corner pinch, or when `visit`
// returns false; `on_block` receives the occupied cell(s) that ended it.
template <class CellFn, class BlockFn>
inline void walk_ray(const OccupancyGrid& grid, Cell from, std::int64_t ddx, std::int64_t ddy,
                     CellFn&& visit, BlockFn&& on_block) {
    if (ddx == 0 && ddy == 0) return;
    const int sx = ddx > 0 ? 1 : -1;
    const int sy = ddy > 0 ? 1 : -1;
    const std::int64_t adx = ddx > 0 ? ddx : -ddx;
    const std::int64_t ady = ddy > 0 ? ddy : -ddy;
    int cx = from.x;
    int cy = from.y;
    std::int64_t nx = 1;
    std::int64_t ny = 1;
    while (true) {
        // next crossing of a vertical boundary at t = (2*nx - 1) / (2*adx),
        // horizontal at (2*ny - 1) / (2*ady), in ray-length units
        const bool has_x = adx != 0;
        const bool has_y = ady != 0;
        const std::int64_t tx = has_x ? (2 * nx - 1) * ady : 0;
        const std::int64_t ty = has_y ? (2 * ny - 1) * adx : 0;
        if (has_x && (!has_y || tx < ty)) {
            cx += sx;
            ++nx;
        } else if (has_y && (!has_x || ty < tx)) {
            cy += sy;
            ++ny;
        } else {
            const Cell s1{cx + sx, cy};
            const Cell s2{cx, cy + sy};
            if (!grid.in_bounds(s1) || !grid.in_bounds(s2)) return;
            if (grid.occupied(s1) && grid.occupied(s2)) {
                on_block(s1);
                on_block(s2);
                return;
            }
            cx += sx;
            cy += sy;
            ++nx;
            ++ny;
        }
        const Cell cur{cx, cy};
        if (!grid.in_bounds(cur)) return;
        if (grid.occupied(cur)) {
            on_block(cur);
            return;
        }
        if (!visit(cur)) return;
    }
}

}  // namespace detail

/// Exact line of sight between cell centers: true iff the closed segment
/// g->c crosses no occupied cell's open unit square, and passes through no
/// lattice corner whose two off-segment cells are both occupied (no
/// squeezing through a diagonal pinch). With `ignore_target`, the occupancy
/// of `c` itself is disregarded.
bool los_exact(const OccupancyGrid& grid, Cell g, Cell c, bool ignore_target = false);

/// Memoized dynamic-programming visibility score of `target` as seen from
/// `pivot`: an upwind average of the two neighbors one step closer to the
/// pivot, weighted by the coordinate offsets. All intermediate scores are
/// inserted into the store. With `ignore_target`, the target's own occupancy
/// is disregarded and the synthetic value is not memoized.
double score_dp(VisibilityStore& store, const OccupancyGrid& grid, Cell pivot, Cell target,
                bool ignore_target = false);

/// exact backend: los_exact; dp backend: score_dp >= store.tau().
bool visible(VisibilityStore& store, const OccupancyGrid& grid, VisibilityBackend backend,
             Cell pivot, Cell target, bool ignore_target = false);

}  // namespace vbm
