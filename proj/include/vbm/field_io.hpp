#pragma once

#include <string>
#include <vector>

#include "vbm/march.hpp"

namespace vbm {

/// Distance field as row-major CSV, one grid row per line, `inf` for
/// unreached cells. Values are printed with enough digits to round-trip.
std::string dist_csv(const MarchResult& result);

/// Parent matrix as row-major CSV of linearized indices (-1 for unreached).
std::string parents_csv(const MarchResult& result);

/// Path waypoints as `x,y` rows, source first.
std::string path_csv(const Path& path);

/// Raw distance field: 16-byte header (magic "VBMF", width and height as
/// 32-bit little-endian, 4 pad bytes) followed by width*height row-major
/// IEEE doubles, little-endian.
std::string dist_raw(const MarchResult& result);

struct RawField {
    int width = 0;
    int height = 0;
    std::vector<double> values;
};

/// Parses the raw format back (used by tests and external tooling).
RawField parse_dist_raw(const std::string& bytes);

}  // namespace vbm
