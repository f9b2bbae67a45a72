#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace vbm {

/// Grid position. x is the column, y the row; origin is the top-left of the
/// map, matching the raster order of map files.
struct Cell {
    int x = 0;
    int y = 0;
    bool operator==(const Cell&) const = default;
};

/// Rectangular boolean occupancy raster (true = obstacle). Immutable after
/// construction, so instances can be shared freely across threads.
class OccupancyGrid {
public:
    OccupancyGrid(int width, int height, std::vector<std::uint8_t> occupied);

    static OccupancyGrid empty(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return occupied_.size(); }

    bool in_bounds(Cell c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }
    bool occupied(int x, int y) const {
        return occupied_[static_cast<std::size_t>(y) * width_ + x] != 0;
    }
    bool occupied(Cell c) const { return occupied(c.x, c.y); }

    int index(Cell c) const { return c.y * width_ + c.x; }
    Cell cell(int index) const { return {index % width_, index / width_}; }

    std::size_t free_count() const;

    bool operator==(const OccupancyGrid&) const = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> occupied_;
};

/// Parses a MovingAI `.map` file: a `type`/`height`/`width`/`map` header
/// followed by one character per cell. `.`, `G`, `S` are free; `@`, `O`,
/// `T`, `W` are obstacles. Throws std::runtime_error naming the offending
/// line on malformed input.
OccupancyGrid parse_movingai_map(std::istream& in);
OccupancyGrid parse_movingai_map(const std::string& text);

/// Serializes back to MovingAI text (`.` / `@` only).
std::string to_movingai_map(const OccupancyGrid& grid);

/// Parses a PGM image (binary P5 or ASCII P2, maxval <= 255). Pixels with
/// gray value below `threshold` become obstacles.
OccupancyGrid parse_pgm(std::istream& in, int threshold = 128);
OccupancyGrid parse_pgm(const std::string& bytes, int threshold = 128);

/// In-bounds, unoccupied cells among the 8-neighborhood of `p`. With
/// `no_corner_cut`, a diagonal neighbor is excluded when both adjacent
/// orthogonal cells are occupied (no squeezing through a diagonal gap).
std::vector<Cell> neighbors8(const OccupancyGrid& grid, Cell p, bool no_corner_cut);

/// Allocation-free variant used by the marching hot loop. Returns the count.
int neighbors8_into(const OccupancyGrid& grid, Cell p, bool no_corner_cut,
                    std::array<Cell, 8>& out);

}  // namespace vbm
