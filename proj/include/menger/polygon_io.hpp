#pragma once

#include <string>

#include "menger/geom.hpp"

namespace menger {

/// Parses the polygon JSON schema
///   {"format_version":1, "closed":true|false, "vertices":[[x,y],...]}
/// and returns a validated polygon. Throws Error with MalformedJson for
/// schema problems and SelfIntersection / ZeroLengthEdge / TooFewVertices
/// for geometric ones.
Polygon parse_polygon_json(const std::string& text);
Polygon load_polygon_file(const std::string& path);

std::string polygon_to_json(const Polygon& p);

/// Writes text to path atomically (temp file in the same directory, then
/// rename).
void atomic_write_file(const std::string& path, const std::string& text);

}  // namespace menger
