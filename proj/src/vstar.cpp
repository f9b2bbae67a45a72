#include "vbm/vstar.hpp"

#include <stdexcept>

#include "march_engine.hpp"

namespace vbm {

VStarResult vstar(const OccupancyGrid& grid, Cell source, Cell goal,
                  const MarchOptions& options) {
    if (!grid.in_bounds(goal)) throw std::invalid_argument("vstar: goal out of bounds");
    if (grid.occupied(goal)) throw std::invalid_argument("vstar: goal is occupied");

    VStarResult result;
    result.explored =
        detail::run_wavefront(grid, {source}, options, &goal, &result.reachable);
    result.popped_count = result.explored.popped_count;
    if (result.reachable) {
        result.path = *extract_path(result.explored, goal);
        result.length = result.path.length;
    }
    return result;
}

}  // namespace vbm
