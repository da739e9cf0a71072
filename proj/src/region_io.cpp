#include "bmlab/region_io.hpp"

#include <fstream>

namespace bmlab {

Json point_to_json(const Point2& p) {
  return Json::array({to_string(p.x), to_string(p.y)});
}

Point2 point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw IoError("point must be [x, y]");
  return {parse_rat(j[0].get<std::string>()), parse_rat(j[1].get<std::string>())};
}

Json region_to_json(const Region& r) {
  Json out;
  Json polys = Json::array();
  for (const auto& ring : r.rings) {
    Json ringj = Json::array();
    for (const auto& p : ring.pts) ringj.push_back(point_to_json(p));
    polys.push_back(Json{{"ring", ringj}, {"hole", ring.hole}});
  }
  out["polygons"] = polys;
  if (!r.markers.empty()) {
    Json ms = Json::array();
    for (const auto& m : r.markers) ms.push_back(point_to_json(m));
    out["markers"] = ms;
  }
  return out;
}

Region region_from_json(const Json& j) {
  if (!j.contains("polygons")) throw IoError("region missing 'polygons'");
  Region r;
  for (const auto& pj : j["polygons"]) {
    Ring ring;
    ring.hole = pj.value("hole", false);
    for (const auto& pt : pj["ring"]) ring.pts.push_back(point_from_json(pt));
    r.rings.push_back(std::move(ring));
  }
  if (j.contains("markers"))
    for (const auto& m : j["markers"]) r.markers.push_back(point_from_json(m));
  return r;
}

Json polygon_to_json(const ConvexPolygon& p) {
  Json arr = Json::array();
  for (const auto& q : p.v) arr.push_back(point_to_json(q));
  return arr;
}

ConvexPolygon polygon_from_json(const Json& j) {
  std::vector<Point2> pts;
  for (const auto& pt : j) pts.push_back(point_from_json(pt));
  return make_convex(std::move(pts));
}

Json affine_to_json(const AffineMap& m) {
  return Json{{"linear", Json::array({to_string(m.m00), to_string(m.m01),
                                      to_string(m.m10), to_string(m.m11)})},
              {"translation", point_to_json(m.shift)}};
}

AffineMap affine_from_json(const Json& j) {
  const auto& l = j["linear"];
  AffineMap m;
  m.m00 = parse_rat(l[0].get<std::string>());
  m.m01 = parse_rat(l[1].get<std::string>());
  m.m10 = parse_rat(l[2].get<std::string>());
  m.m11 = parse_rat(l[3].get<std::string>());
  m.shift = point_from_json(j["translation"]);
  return m;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("bad json in " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace bmlab
