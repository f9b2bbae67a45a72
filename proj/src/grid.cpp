#include "vbm/grid.hpp"

#include <cctype>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace vbm {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line) + ": " + what);
}

// Reads "<key> <positive integer>" header lines of the MovingAI format.
int header_int(const std::string& line, int line_no, const std::string& key) {
    std::istringstream ss(line);
    std::string k;
    long v = -1;
    if (!(ss >> k >> v) || k != key || v < 1)
        parse_fail(line_no, "expected '" + key + " <positive integer>'");
    std::string rest;
    if (ss >> rest) parse_fail(line_no, "trailing tokens after '" + key + "'");
    return static_cast<int>(v);
}

std::string next_line(std::istream& in, int& line_no, bool& ok) {
    std::string line;
    ok = static_cast<bool>(std::getline(in, line));
    if (ok) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
    }
    return line;
}

}  // namespace

OccupancyGrid::OccupancyGrid(int width, int height, std::vector<std::uint8_t> occupied)
    : width_(width), height_(height), occupied_(std::move(occupied)) {
    if (width_ < 1 || height_ < 1)
        throw std::invalid_argument("grid dimensions must be at least 1x1");
    if (occupied_.size() != static_cast<std::size_t>(width_) * height_)
        throw std::invalid_argument("occupancy buffer size does not match dimensions");
}

OccupancyGrid OccupancyGrid::empty(int width, int height) {
    return OccupancyGrid(width, height,
                         std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0));
}

std::size_t OccupancyGrid::free_count() const {
    std::size_t n = 0;
    for (auto v : occupied_) n += (v == 0);
    return n;
}

OccupancyGrid parse_movingai_map(std::istream& in) {
    int line_no = 0;
    bool ok = false;

    std::string line = next_line(in, line_no, ok);
    if (!ok || line.compare(0, 5, "type ") != 0)
        parse_fail(line_no == 0 ? 1 : line_no, "expected 'type <name>' header");

    line = next_line(in, line_no, ok);
    if (!ok) parse_fail(line_no + 1, "expected 'height <H>' header");
    const int height = header_int(line, line_no, "height");

    line = next_line(in, line_no, ok);
    if (!ok) parse_fail(line_no + 1, "expected 'width <W>' header");
    const int width = header_int(line, line_no, "width");

    line = next_line(in, line_no, ok);
    if (!ok || line != "map") parse_fail(ok ? line_no : line_no + 1, "expected 'map' header");

    std::vector<std::uint8_t> occ(static_cast<std::size_t>(width) * height, 0);
    for (int y = 0; y < height; ++y) {
        line = next_line(in, line_no, ok);
        if (!ok)
            parse_fail(line_no + 1, "unexpected end of input: expected " +
                                        std::to_string(height) + " map rows, got " +
                                        std::to_string(y));
        if (static_cast<int>(line.size()) != width)
            parse_fail(line_no, "row length " + std::to_string(line.size()) +
                                    " does not match width " + std::to_string(width));
        for (int x = 0; x < width; ++x) {
            const char c = line[static_cast<std::size_t>(x)];
            switch (c) {
                case '.':
                case 'G':
                case 'S':
                    break;
                case '@':
                case 'O':
                case 'T':
                case 'W':
                    occ[static_cast<std::size_t>(y) * width + x] = 1;
                    break;
                default:
                    parse_fail(line_no, std::string("unknown terrain character '") + c + "'");
            }
        }
    }
    // Trailing blank lines are tolerated; anything else is a row-count error.
    while ((line = next_line(in, line_no, ok)), ok) {
        if (!line.empty())
            parse_fail(line_no, "extra map row beyond declared height " + std::to_string(height));
    }
    return OccupancyGrid(width, height, std::move(occ));
}

OccupancyGrid parse_movingai_map(const std::string& text) {
    std::istringstream ss(text);
    return parse_movingai_map(ss);
}

std::string to_movingai_map(const OccupancyGrid& grid) {
    std::string out = "type octile\nheight " + std::to_string(grid.height()) + "\nwidth " +
                      std::to_string(grid.width()) + "\nmap\n";
    out.reserve(out.size() + grid.size() + grid.height());
    for (int y = 0; y < grid.height(); ++y) {
        for (int x = 0; x < grid.width(); ++x) out += grid.occupied(x, y) ? '@' : '.';
        out += '\n';
    }
    return out;
}

namespace {

// PGM token scanner: skips whitespace and '#' comments.
bool pgm_token(std::istream& in, std::string& tok) {
    tok.clear();
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF) return false;
    while (c != EOF && !std::isspace(c) && c != '#') {
        tok += static_cast<char>(c);
        c = in.get();
    }
    if (c == '#') in.unget();
    return true;
}

int pgm_int(std::istream& in, const char* what) {
    std::string tok;
    if (!pgm_token(in, tok)) throw std::runtime_error(std::string("pgm: truncated header: ") + what);
    try {
        std::size_t pos = 0;
        const long v = std::stol(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("pgm: invalid integer for ") + what + ": '" + tok + "'");
    }
}

}  // namespace

OccupancyGrid parse_pgm(std::istream& in, int threshold) {
    if (threshold < 0 || threshold > 255)
        throw std::invalid_argument("pgm threshold must be in [0, 255]");

    std::string magic;
    if (!pgm_token(in, magic) || (magic != "P2" && magic != "P5"))
        throw std::runtime_error("pgm: bad magic number (expected P2 or P5)");
    const bool binary = magic == "P5";

    const int width = pgm_int(in, "width");
    const int height = pgm_int(in, "height");
    const int maxval = pgm_int(in, "maxval");
    if (width < 1 || height < 1) throw std::runtime_error("pgm: dimensions must be at least 1x1");
    if (maxval < 1 || maxval > 255)
        throw std::runtime_error("pgm: unsupported maxval " + std::to_string(maxval));

    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> occ(n, 0);
    if (binary) {
        // the token scanner consumed the single whitespace after maxval
        std::vector<char> buf(n);
        in.read(buf.data(), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in.gcount()) != n)
            throw std::runtime_error("pgm: truncated pixel payload");
        for (std::size_t i = 0; i < n; ++i)
            occ[i] = static_cast<std::uint8_t>(buf[i]) < threshold ? 1 : 0;
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const int v = pgm_int(in, "pixel");
            if (v > maxval) throw std::runtime_error("pgm: pixel value exceeds maxval");
            occ[i] = v < threshold ? 1 : 0;
        }
    }
    return OccupancyGrid(width, height, std::move(occ));
}

OccupancyGrid parse_pgm(const std::string& bytes, int threshold) {
    std::istringstream ss(bytes);
    return parse_pgm(ss, threshold);
}

int neighbors8_into(const OccupancyGrid& grid, Cell p, bool no_corner_cut,
                    std::array<Cell, 8>& out) {
    static constexpr int kDx[8] = {1, -1, 0, 0, 1, -1, 1, -1};
    static constexpr int kDy[8] = {0, 0, 1, -1, 1, 1, -1, -1};
    int count = 0;
    for (int k = 0; k < 8; ++k) {
        const Cell n{p.x + kDx[k], p.y + kDy[k]};
        if (!grid.in_bounds(n) || grid.occupied(n)) continue;
        if (no_corner_cut && k >= 4 && grid.occupied(n.x, p.y) && grid.occupied(p.x, n.y))
            continue;
        out[static_cast<std::size_t>(count++)] = n;
    }
    return count;
}

std::vector<Cell> neighbors8(const OccupancyGrid& grid, Cell p, bool no_corner_cut) {
    if (!grid.in_bounds(p)) throw std::invalid_argument("neighbors8: cell out of bounds");
    std::array<Cell, 8> buf;
    const int count = neighbors8_into(grid, p, no_corner_cut, buf);
    return std::vector<Cell>(buf.begin(), buf.begin() + count);
}

}  // namespace vbm
