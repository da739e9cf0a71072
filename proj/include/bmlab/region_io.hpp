#pragma once

#include <string>

#include <json.hpp>

#include "bmlab/geom.hpp"

namespace bmlab {

using Json = nlohmann::ordered_json;

// Region wire schema (bit-exact round trip):
//   {"polygons":[{"ring":[["num/den","num/den"],...],"hole":bool},...],
//    "markers":[["num/den","num/den"],...]}   // markers optional
Json region_to_json(const Region& r);
Region region_from_json(const Json& j);

Json point_to_json(const Point2& p);
Point2 point_from_json(const Json& j);

Json polygon_to_json(const ConvexPolygon& p);
ConvexPolygon polygon_from_json(const Json& j);

Json affine_to_json(const AffineMap& m);
AffineMap affine_from_json(const Json& j);

Json load_json_file(const std::string& path);             // throws IoError
void save_json_file(const std::string& path, const Json& j);

}  // namespace bmlab
