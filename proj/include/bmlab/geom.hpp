#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bmlab/rat.hpp"

namespace bmlab {

struct Vec2 {
  Rat x, y;

  Vec2() : x(0), y(0) {}
  Vec2(Rat xx, Rat yy) : x(std::move(xx)), y(std::move(yy)) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(const Rat& s) const { return {x * s, y * s}; }
  Vec2 operator/(const Rat& s) const { return {x / s, y / s}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2& o) const { return !(*this == o); }

  Rat dot(const Vec2& o) const { return x * o.x + y * o.y; }
  Rat cross(const Vec2& o) const { return x * o.y - y * o.x; }
  Rat norm2() const { return x * x + y * y; }
  Vec2 perp() const { return {-y, x}; }  // rotate 90 deg ccw
};

using Point2 = Vec2;

inline Vec2 operator*(const Rat& s, const Vec2& v) { return v * s; }

// lexicographic (x, then y)
inline bool lex_less(const Point2& a, const Point2& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// sign of cross(u, v) on the integer path (cleared denominators)
int cross_sign(const Vec2& u, const Vec2& v);

// sign of cross(b-a, c-a): +1 left turn, -1 right, 0 collinear
inline int orient(const Point2& a, const Point2& b, const Point2& c) {
  return cross_sign(b - a, c - a);
}

Rat dist2(const Point2& a, const Point2& b);

struct Segment {
  Point2 a, b;
  Segment() = default;
  Segment(Point2 p, Point2 q) : a(std::move(p)), b(std::move(q)) {}
  Vec2 dir() const { return b - a; }
  Rat len2() const { return dist2(a, b); }
};

bool point_on_segment(const Point2& p, const Segment& s);  // closed

// Intersection point of the supporting lines; nullopt when parallel.
std::optional<Point2> line_intersect(const Point2& p, const Vec2& d,
                                     const Point2& q, const Vec2& e);

struct BBox {
  Rat xmin, ymin, xmax, ymax;
  bool valid = false;
  void expand(const Point2& p);
  void expand(const BBox& o);
  bool overlaps(const BBox& o) const;
};

// Counterclockwise strictly convex polygon; canonical form starts at the
// lexicographically smallest vertex.
struct ConvexPolygon {
  std::vector<Point2> v;

  size_t size() const { return v.size(); }
  const Point2& operator[](size_t i) const { return v[i % v.size()]; }
  Segment edge(size_t i) const { return {v[i % v.size()], v[(i + 1) % v.size()]}; }

  Rat area() const;
  BBox bbox() const;
  Point2 centroid() const;
  bool contains(const Point2& p) const;         // closed
  bool contains_strict(const Point2& p) const;  // open
  bool contains(const ConvexPolygon& q) const;
  bool on_boundary(const Point2& p) const;
  bool operator==(const ConvexPolygon& o) const { return v == o.v; }
};

// Validates CCW orientation and convexity, drops collinear vertices,
// rotates to canonical start. Throws DegenerateInput.
ConvexPolygon make_convex(std::vector<Point2> ccw_vertices);

// Minimal convex polygon over >= 3 non-collinear points (monotone chain).
ConvexPolygon convex_hull(std::span<const Point2> points);

// Outward normal directions supporting the polygon at a boundary point:
// single direction on an edge interior, a cone at a vertex (lo..hi ccw).
struct NormalCone {
  Vec2 lo, hi;               // unnormalized outward normals
  bool single() const { return lo == hi; }
};
NormalCone support_data(const ConvexPolygon& p, const Point2& boundary_point);

// Oriented simple loop; stored CCW regardless of role, `hole` flags negative.
struct Ring {
  std::vector<Point2> pts;
  bool hole = false;
  bool operator==(const Ring&) const = default;
};

// Finite union of simple polygons with holes, plus isolated marker points
// (measure-zero content that still participates in hulls and Minkowski sums).
struct Region {
  std::vector<Ring> rings;
  std::vector<Point2> markers;

  bool has_material() const { return !rings.empty(); }
  bool is_empty() const { return rings.empty() && markers.empty(); }
  bool operator==(const Region&) const = default;
};

Region region_from(const ConvexPolygon& p);
Region region_from_ring(std::vector<Point2> ccw);  // validates simple loop

// Ordering conventions only (no geometry change): rings rotated to their
// lexicographic minimum, rings sorted, markers sorted and deduped.
void canonical_order(Region& r);

// Signed-area sum; exact for canonical (non-overlapping) regions.
Rat region_area(const Region& r);
BBox region_bbox(const Region& r);

bool region_contains_closed(const Region& r, const Point2& p);

ConvexPolygon region_hull(const Region& r);  // over ring vertices + markers

struct AffineMap {
  Rat m00, m01, m10, m11;  // linear part, row-major
  Vec2 shift;

  static AffineMap identity();
  static AffineMap translation(const Vec2& t);
  static AffineMap scaling(const Rat& s);

  Rat det() const { return m00 * m11 - m01 * m10; }
  Point2 apply(const Point2& p) const;
  Vec2 apply_linear(const Vec2& v) const;
  AffineMap compose(const AffineMap& inner) const;  // this ∘ inner
  AffineMap inverse() const;                        // throws DegenerateInput
};

ConvexPolygon transform(const AffineMap& m, const ConvexPolygon& p);
Region transform(const AffineMap& m, const Region& r);

Region translate(const Region& r, const Vec2& t);
Region scale(const Region& r, const Rat& s);  // throws BadParams on s == 0

}  // namespace bmlab
