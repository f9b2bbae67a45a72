#pragma once

#include <array>
#include <string>
#include <vector>

#include "vbm/march.hpp"

namespace vbm {

enum class RenderMode { distance, parents, path_overlay };

using Rgb = std::array<std::uint8_t, 3>;

/// Five-stop cold-to-hot ramp (blue, cyan, green, yellow, red).
inline constexpr std::array<Rgb, 5> kColdHotRamp{
    Rgb{0, 0, 255}, Rgb{0, 255, 255}, Rgb{0, 255, 0}, Rgb{255, 255, 0}, Rgb{255, 0, 0}};

struct RenderSpec {
    RenderMode mode = RenderMode::distance;
    std::array<Rgb, 5> colormap = kColdHotRamp;
    Rgb obstacle_color{139, 0, 0};  // dark red
    /// Contour band width in pixels, 0 = off (distance mode only).
    double contour_interval = 0.0;
    /// Paths drawn in path_overlay mode.
    std::vector<Path> paths;
};

/// Renders the march output as a binary PPM (P6) image, one pixel per cell.
/// Deterministic: identical inputs produce byte-identical output.
///   distance:  normalized distance through the colormap, obstacles in the
///              obstacle color, unreached cells gray; optional black
///              contour bands.
///   parents:   one color per distinct parent (injective hash of the parent
///              index), pivots as white pixels.
///   path_overlay: free cells white, obstacles in the obstacle color, path
///              segments red, sources green.
std::string render(const MarchResult& result, const OccupancyGrid& grid, const RenderSpec& spec);

}  // namespace vbm
