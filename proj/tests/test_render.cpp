#include <doctest.h>

#include <map>

#include "test_support.hpp"
#include "vbm/march.hpp"
#include "vbm/render.hpp"

using namespace vbm;
using vbm::testing::grid_from_art;

namespace {

struct Image {
    int width = 0;
    int height = 0;
    std::vector<Rgb> px;

    Rgb at(int x, int y) const { return px[static_cast<std::size_t>(y) * width + x]; }
};

Image decode_ppm(const std::string& bytes) {
    Image img;
    int maxval = 0;
    std::size_t pos = 0;
    REQUIRE(bytes.compare(0, 3, "P6\n") == 0);
    pos = 3;
    const auto next_int = [&](int& out) {
        out = 0;
        while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
        while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos])))
            out = out * 10 + (bytes[pos++] - '0');
    };
    next_int(img.width);
    next_int(img.height);
    next_int(maxval);
    REQUIRE(maxval == 255);
    ++pos;  // single whitespace after maxval
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    REQUIRE(bytes.size() == pos + n * 3);
    img.px.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        img.px[i] = Rgb{static_cast<std::uint8_t>(bytes[pos + i * 3]),
                        static_cast<std::uint8_t>(bytes[pos + i * 3 + 1]),
                        static_cast<std::uint8_t>(bytes[pos + i * 3 + 2])};
    return img;
}

}  // namespace

TEST_CASE("render: 1x1 distance image puts the source at the cold end") {
    const OccupancyGrid grid = OccupancyGrid::empty(1, 1);
    const MarchResult r = march(grid, {{0, 0}});
    const Image img = decode_ppm(render(r, grid, RenderSpec{}));
    CHECK(img.width == 1);
    CHECK(img.height == 1);
    CHECK(img.at(0, 0) == kColdHotRamp.front());
}

TEST_CASE("render: byte-identical for identical inputs") {
    const OccupancyGrid grid = grid_from_art({
        "....",
        ".#..",
        "....",
    });
    const MarchResult r = march(grid, {{0, 0}});
    for (const RenderMode mode :
         {RenderMode::distance, RenderMode::parents, RenderMode::path_overlay}) {
        RenderSpec spec;
        spec.mode = mode;
        if (mode == RenderMode::path_overlay) spec.paths.push_back(*extract_path(r, {3, 2}));
        CHECK(render(r, grid, spec) == render(r, grid, spec));
    }
}

TEST_CASE("render: obstacles, unreached cells, and dimension checks") {
    const OccupancyGrid grid = grid_from_art({
        ".....",
        ".###.",
        ".#.#.",
        ".###.",
        ".....",
    });
    const MarchResult r = march(grid, {{0, 0}});
    RenderSpec spec;
    const Image img = decode_ppm(render(r, grid, spec));
    CHECK(img.at(2, 1) == spec.obstacle_color);
    CHECK(img.at(2, 2) == Rgb{64, 64, 64});  // walled-off pocket
    CHECK(img.at(0, 0) == kColdHotRamp.front());

    const OccupancyGrid other = OccupancyGrid::empty(4, 4);
    CHECK_THROWS_AS(render(r, other, spec), std::invalid_argument);
}

TEST_CASE("render: distance contours follow metric level sets") {
    const OccupancyGrid grid = OccupancyGrid::empty(41, 41);
    const MarchResult r = march(grid, {{20, 20}});
    RenderSpec spec;
    spec.contour_interval = 5.0;
    const Image img = decode_ppm(render(r, grid, spec));
    int contour_px = 0;
    for (int y = 0; y < 41; ++y)
        for (int x = 0; x < 41; ++x)
            if (img.at(x, y) == Rgb{0, 0, 0}) ++contour_px;
    CHECK(contour_px > 40);  // several rings
    // a contour pixel sits exactly where the banded distance changes
    for (int y = 1; y < 40; ++y)
        for (int x = 1; x < 40; ++x) {
            const auto band = [&](int cx, int cy) {
                return static_cast<long>(r.dist_at({cx, cy}) / 5.0);
            };
            const bool edge = band(x, y) != band(x - 1, y) || band(x, y) != band(x + 1, y) ||
                              band(x, y) != band(x, y - 1) || band(x, y) != band(x, y + 1);
            if (img.at(x, y) == Rgb{0, 0, 0}) CHECK(edge);
        }
}

TEST_CASE("render: parents mode colors regions by parent, pivots white") {
    const OccupancyGrid grid = grid_from_art({
        "......",
        "..##..",
        "......",
        "......",
    });
    MarchOptions o;
    o.backend = VisibilityBackend::exact;
    const MarchResult r = march(grid, {{0, 0}}, o);
    RenderSpec spec;
    spec.mode = RenderMode::parents;
    const Image img = decode_ppm(render(r, grid, spec));

    std::map<std::array<std::uint8_t, 3>, int> color_to_parent;
    for (int y = 0; y < grid.height(); ++y)
        for (int x = 0; x < grid.width(); ++x) {
            const Cell c{x, y};
            const auto idx = static_cast<std::size_t>(grid.index(c));
            if (grid.occupied(c) || r.parents[idx] < 0 || r.pivot_mask[idx]) continue;
            const auto color = img.at(x, y);
            const auto [it, inserted] = color_to_parent.emplace(color, r.parents[idx]);
            CHECK(it->second == r.parents[idx]);  // same color <=> same parent
        }
    CHECK(color_to_parent.size() >= 2);  // the obstacle forces at least one pivot region
    for (const Cell& pivot : r.pivots) CHECK(img.at(pivot.x, pivot.y) == Rgb{255, 255, 255});
    CHECK_FALSE(r.pivots.empty());
}

TEST_CASE("render: path overlay draws the taut route over the map") {
    const OccupancyGrid grid = grid_from_art({
        ".....",
        ".....",
        "..#..",
        ".....",
        ".....",
    });
    MarchOptions o;
    o.backend = VisibilityBackend::exact;
    const MarchResult r = march(grid, {{0, 0}}, o);
    RenderSpec spec;
    spec.mode = RenderMode::path_overlay;
    spec.paths.push_back(*extract_path(r, {4, 4}));
    const Image img = decode_ppm(render(r, grid, spec));
    CHECK(img.at(0, 0) == Rgb{0, 200, 0});       // source marker
    CHECK(img.at(4, 4) == Rgb{255, 0, 0});       // goal end of the polyline
    CHECK(img.at(2, 2) == spec.obstacle_color);  // obstacle untouched
    int path_px = 0;
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x)
            if (img.at(x, y) == Rgb{255, 0, 0}) ++path_px;
    CHECK(path_px >= 4);
}
