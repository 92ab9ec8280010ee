#pragma once

#include <string>
#include <string_view>

#include "polyflow/polygon.hpp"

namespace polyflow {

// Polygon text formats. Both write doubles with 17 significant digits, so
// parsing the output reproduces the input bit for bit.

/// JSON array of [x, y] pairs.
std::string polygon_to_json(const Polygon& p);
Polygon polygon_from_json(std::string_view text);

/// CSV with header `j,x,y`, one row per vertex in index order.
std::string polygon_to_csv(const Polygon& p);
Polygon polygon_from_csv(std::string_view text);

/// Reads a polygon from disk, choosing the format by extension (.json or .csv).
Polygon load_polygon(const std::string& path);

/// Shortest decimal form with 17 significant digits.
std::string format_double(double v);

}  // namespace polyflow
