#include "vbm/render.hpp"

#include <cmath>
#include <stdexcept>

#include "vbm/visibility.hpp"

namespace vbm {

namespace {

constexpr Rgb kUnreached{64, 64, 64};
constexpr Rgb kContour{0, 0, 0};
constexpr Rgb kPivot{255, 255, 255};
constexpr Rgb kPathColor{255, 0, 0};
constexpr Rgb kSourceColor{0, 200, 0};
constexpr Rgb kFreeBackground{255, 255, 255};

Rgb ramp_color(const std::array<Rgb, 5>& ramp, double t) {
    if (t <= 0.0) return ramp.front();
    if (t >= 1.0) return ramp.back();
    const double pos = t * (ramp.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    Rgb out;
    for (std::size_t c = 0; c < 3; ++c)
        out[c] = static_cast<std::uint8_t>(
            std::lround(ramp[i][c] + frac * (ramp[i + 1][c] - ramp[i][c])));
    return out;
}

// Injective on indices below 2^24: multiplication by an odd constant is a
// bijection modulo 2^24, so distinct parents always get distinct colors.
Rgb parent_color(int parent_index) {
    const std::uint32_t mixed =
        (static_cast<std::uint32_t>(parent_index + 1) * 0x9E3779B1u) & 0xFFFFFFu;
    return Rgb{static_cast<std::uint8_t>(mixed >> 16), static_cast<std::uint8_t>(mixed >> 8),
               static_cast<std::uint8_t>(mixed)};
}

}  // namespace

std::string render(const MarchResult& result, const OccupancyGrid& grid, const RenderSpec& spec) {
    if (result.width != grid.width() || result.height != grid.height())
        throw std::invalid_argument("render: result and grid dimensions differ");
    const int w = grid.width();
    const int h = grid.height();
    std::vector<Rgb> px(static_cast<std::size_t>(w) * h);

    const auto put = [&](Cell c, Rgb color) {
        px[static_cast<std::size_t>(c.y) * w + c.x] = color;
    };

    switch (spec.mode) {
        case RenderMode::distance: {
            double max_dist = 0.0;
            for (int i = 0; i < w * h; ++i) {
                const auto ii = static_cast<std::size_t>(i);
                if (!grid.occupied(grid.cell(i)) && result.dist[ii] != kInf &&
                    result.dist[ii] > max_dist)
                    max_dist = result.dist[ii];
            }
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const auto i = static_cast<std::size_t>(y) * w + x;
                    if (grid.occupied(x, y))
                        px[i] = spec.obstacle_color;
                    else if (result.dist[i] == kInf)
                        px[i] = kUnreached;
                    else
                        px[i] = ramp_color(spec.colormap,
                                           max_dist > 0.0 ? result.dist[i] / max_dist : 0.0);
                }
            }
            if (spec.contour_interval > 0.0) {
                const double step = spec.contour_interval;
                const auto band = [&](int x, int y) {
                    return static_cast<long>(
                        std::floor(result.dist[static_cast<std::size_t>(y) * w + x] / step));
                };
                const auto contoured = [&](int x, int y) {
                    return !grid.occupied(x, y) &&
                           result.dist[static_cast<std::size_t>(y) * w + x] != kInf;
                };
                for (int y = 0; y < h; ++y) {
                    for (int x = 0; x < w; ++x) {
                        if (!contoured(x, y)) continue;
                        const long b = band(x, y);
                        const bool edge =
                            (x > 0 && contoured(x - 1, y) && band(x - 1, y) != b) ||
                            (x + 1 < w && contoured(x + 1, y) && band(x + 1, y) != b) ||
                            (y > 0 && contoured(x, y - 1) && band(x, y - 1) != b) ||
                            (y + 1 < h && contoured(x, y + 1) && band(x, y + 1) != b);
                        if (edge) put({x, y}, kContour);
                    }
                }
            }
            break;
        }
        case RenderMode::parents: {
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const auto i = static_cast<std::size_t>(y) * w + x;
                    if (grid.occupied(x, y))
                        px[i] = spec.obstacle_color;
                    else if (result.parents[i] < 0)
                        px[i] = kUnreached;
                    else
                        px[i] = parent_color(result.parents[i]);
                }
            }
            for (const Cell& pivot : result.pivots) put(pivot, kPivot);
            break;
        }
        case RenderMode::path_overlay: {
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x)
                    px[static_cast<std::size_t>(y) * w + x] =
                        grid.occupied(x, y) ? spec.obstacle_color : kFreeBackground;
            for (const Path& path : spec.paths) {
                for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i)
                    detail::walk_supercover(
                        path.waypoints[i], path.waypoints[i + 1],
                        [&](Cell c) {
                            put(c, kPathColor);
                            return true;
                        },
                        [](Cell, Cell) { return true; });
                if (path.waypoints.size() == 1) put(path.waypoints.front(), kPathColor);
                if (!path.waypoints.empty()) put(path.waypoints.front(), kSourceColor);
            }
            break;
        }
    }

    std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    out.reserve(out.size() + px.size() * 3);
    for (const Rgb& c : px) {
        out += static_cast<char>(c[0]);
        out += static_cast<char>(c[1]);
        out += static_cast<char>(c[2]);
    }
    return out;
}

}  // namespace vbm
