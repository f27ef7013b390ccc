#include "menger/polygon_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace menger {

using nlohmann::json;

Polygon parse_polygon_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedJson, e.what());
  }
  if (!j.is_object() || !j.contains("format_version") || !j.contains("closed") ||
      !j.contains("vertices"))
    throw Error(ErrorCode::MalformedJson,
                "expected object with format_version, closed, vertices");
  if (!j["format_version"].is_number_integer() || j["format_version"].get<int>() != 1)
    throw Error(ErrorCode::MalformedJson, "unsupported format_version");
  if (!j["closed"].is_boolean())
    throw Error(ErrorCode::MalformedJson, "closed must be a boolean");
  if (!j["vertices"].is_array())
    throw Error(ErrorCode::MalformedJson, "vertices must be an array");

  std::vector<Coords> verts;
  for (const auto& row : j["vertices"]) {
    if (!row.is_array() || row.size() < 2)
      throw Error(ErrorCode::MalformedJson, "each vertex must be an array of >= 2 numbers");
    Coords c;
    for (const auto& x : row) {
      if (!x.is_number())
        throw Error(ErrorCode::MalformedJson, "vertex coordinates must be numbers");
      c.push_back(x.get<double>());
    }
    verts.push_back(std::move(c));
  }

  Polygon p(std::move(verts), j["closed"].get<bool>());
  p.validate();
  return p;
}

Polygon load_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedJson, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_polygon_json(ss.str());
}

std::string polygon_to_json(const Polygon& p) {
  json verts = json::array();
  for (std::size_t i = 0; i < p.vertex_count(); ++i) {
    json row = json::array();
    for (double c : p.vertex(i)) row.push_back(c);
    verts.push_back(row);
  }
  json j = {{"format_version", 1}, {"closed", p.closed()}, {"vertices", verts}};
  return j.dump(2) + "\n";
}

void atomic_write_file(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, target);
}

}  // namespace menger
