#include "mmp/io.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "json.hpp"
#include "mmp/errors.hpp"

namespace mmp {

namespace {

using Json = nlohmann::ordered_json;

std::vector<Point> parse_points(const Json& arr, const char* key) {
  if (!arr.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
  if (arr.empty()) throw ParseError(std::string("\"") + key + "\" is empty");
  std::vector<Point> pts;
  pts.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Json& p = arr[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ParseError(std::string(key) + "[" + std::to_string(i) + "] is not an [x, y] pair");
    }
    Point q{p[0].get<double>(), p[1].get<double>()};
    if (!is_finite(q)) throw ParseError(std::string(key) + "[" + std::to_string(i) + "] is not finite");
    pts.push_back(q);
  }
  return pts;
}

Json points_json(const PointSet& ps, std::optional<Color> only) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (only && (*ps.colors)[i] != *only) continue;
    arr.push_back(Json::array({ps[i].x, ps[i].y}));
  }
  return arr;
}

}  // namespace

PointSetDocument parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "name" && key != "points" && key != "red" && key != "blue") {
      throw ParseError("unknown key \"" + key + "\"");
    }
  }

  PointSetDocument doc;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("\"name\" must be a string");
    doc.name = j["name"].get<std::string>();
  }
  bool has_points = j.contains("points");
  bool has_colors = j.contains("red") || j.contains("blue");
  if (has_points == has_colors) throw ParseError("expected either \"points\" or \"red\" and \"blue\"");
  try {
    if (has_points) {
      doc.point_set = PointSet::uncolored(parse_points(j["points"], "points"));
    } else {
      if (!j.contains("red") || !j.contains("blue")) throw ParseError("colored input needs both \"red\" and \"blue\"");
      doc.point_set = PointSet::bichromatic(parse_points(j["red"], "red"), parse_points(j["blue"], "blue"));
    }
    doc.point_set.validate();
  } catch (const InvalidParameter& e) {
    throw ParseError(e.what());
  }
  return doc;
}

std::string serialize_document(const PointSetDocument& doc) {
  Json j = Json::object();
  if (doc.name) j["name"] = *doc.name;
  if (doc.point_set.colored()) {
    j["red"] = points_json(doc.point_set, Color::Red);
    j["blue"] = points_json(doc.point_set, Color::Blue);
  } else {
    j["points"] = points_json(doc.point_set, std::nullopt);
  }
  return j.dump();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string document_digest(const PointSetDocument& doc) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(serialize_document(doc))));
  return buf;
}

bool same_document(const PointSetDocument& a, const PointSetDocument& b) {
  return a.name == b.name && a.point_set.points == b.point_set.points && a.point_set.colors == b.point_set.colors;
}

}  // namespace mmp
