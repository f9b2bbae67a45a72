#include "vbm/field_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace vbm {

namespace {

void append_value(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;  // infinity prints as "inf"
}

void append_u32le(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xFF);
}

std::uint32_t read_u32le(const std::string& bytes, std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + i])) << (8 * i);
    return v;
}

}  // namespace

std::string dist_csv(const MarchResult& result) {
    std::string out;
    out.reserve(result.dist.size() * 8);
    for (int y = 0; y < result.height; ++y) {
        for (int x = 0; x < result.width; ++x) {
            if (x) out += ',';
            append_value(out, result.dist[static_cast<std::size_t>(y) * result.width + x]);
        }
        out += '\n';
    }
    return out;
}

std::string parents_csv(const MarchResult& result) {
    std::string out;
    out.reserve(result.parents.size() * 4);
    for (int y = 0; y < result.height; ++y) {
        for (int x = 0; x < result.width; ++x) {
            if (x) out += ',';
            out += std::to_string(result.parents[static_cast<std::size_t>(y) * result.width + x]);
        }
        out += '\n';
    }
    return out;
}

std::string path_csv(const Path& path) {
    std::string out;
    for (const Cell& c : path.waypoints)
        out += std::to_string(c.x) + "," + std::to_string(c.y) + "\n";
    return out;
}

std::string dist_raw(const MarchResult& result) {
    std::string out;
    out.reserve(16 + result.dist.size() * 8);
    out += "VBMF";
    append_u32le(out, static_cast<std::uint32_t>(result.width));
    append_u32le(out, static_cast<std::uint32_t>(result.height));
    append_u32le(out, 0);  // pad
    for (const double v : result.dist) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i) out += static_cast<char>((bits >> (8 * i)) & 0xFF);
    }
    return out;
}

RawField parse_dist_raw(const std::string& bytes) {
    if (bytes.size() < 16 || bytes.compare(0, 4, "VBMF") != 0)
        throw std::runtime_error("raw field: bad magic");
    RawField f;
    f.width = static_cast<int>(read_u32le(bytes, 4));
    f.height = static_cast<int>(read_u32le(bytes, 8));
    const std::size_t n = static_cast<std::size_t>(f.width) * static_cast<std::size_t>(f.height);
    if (bytes.size() != 16 + n * 8) throw std::runtime_error("raw field: truncated payload");
    f.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= static_cast<std::uint64_t>(
                        static_cast<unsigned char>(bytes[16 + i * 8 + static_cast<std::size_t>(b)]))
                    << (8 * b);
        f.values[i] = std::bit_cast<double>(bits);
    }
    return f;
}

}  // namespace vbm
