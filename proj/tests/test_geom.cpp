#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bmlab/geom.hpp"

using namespace bmlab;

namespace {

Point2 pt(long x, long y) { return {rat(x), rat(y)}; }
Point2 pt(Rat x, Rat y) { return {std::move(x), std::move(y)}; }

ConvexPolygon unit_square() {
  return make_convex({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)});
}

// a convex polygon containing all inputs whose vertices are inputs IS the hull
void check_is_hull(const ConvexPolygon& h, const std::vector<Point2>& pts) {
  for (const auto& p : pts) CHECK(h.contains(p));
  for (const auto& v : h.v)
    CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());
  for (size_t i = 0; i < h.size(); ++i)
    CHECK(orient(h[i], h[i + 1], h[i + 2]) > 0);
}

}  // namespace

TEST_CASE("convex hull drops interior point") {
  std::vector<Point2> pts{pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1),
                          pt(rat(1, 2), rat(1, 2))};
  ConvexPolygon h = convex_hull(pts);
  CHECK(h.size() == 4);
  check_is_hull(h, pts);
}

TEST_CASE("convex hull of a triangle is itself") {
  std::vector<Point2> pts{pt(0, 0), pt(1, 0), pt(0, 1)};
  ConvexPolygon h = convex_hull(pts);
  CHECK(h.size() == 3);
  check_is_hull(h, pts);
}

TEST_CASE("hull of square plus lifted point") {
  std::vector<Point2> pts{pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1),
                          pt(rat(0), rat(3, 2))};
  ConvexPolygon h = convex_hull(pts);
  CHECK(h.size() == 4);  // (0,1) absorbed into the left edge
  CHECK(h.v == std::vector<Point2>{pt(0, 0), pt(1, 0), pt(1, 1), pt(rat(0), rat(3, 2))});
  check_is_hull(h, pts);
}

TEST_CASE("hull degenerate inputs") {
  std::vector<Point2> line{pt(0, 0), pt(1, 1), pt(2, 2), pt(3, 3)};
  CHECK_THROWS_AS(convex_hull(line), DegenerateInput);
  std::vector<Point2> two{pt(0, 0), pt(1, 1)};
  CHECK_THROWS_AS(convex_hull(two), DegenerateInput);
}

TEST_CASE("hull idempotence on random points") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> c(-8, 8);
  for (int iter = 0; iter < 60; ++iter) {
    std::vector<Point2> pts;
    for (int i = 0; i < 12; ++i) pts.push_back(pt(c(rng), c(rng)));
    ConvexPolygon h;
    try {
      h = convex_hull(pts);
    } catch (const DegenerateInput&) {
      continue;
    }
    check_is_hull(h, pts);
    ConvexPolygon h2 = convex_hull(h.v);
    CHECK(h2 == h);
  }
}

TEST_CASE("polygon area and centroid") {
  CHECK(unit_square().area() == 1);
  ConvexPolygon tri = make_convex({pt(0, 0), pt(1, 0), pt(0, 1)});
  CHECK(tri.area() == rat(1, 2));
  CHECK(unit_square().centroid() == pt(rat(1, 2), rat(1, 2)));
}

TEST_CASE("make_convex canonicalizes") {
  // collinear middle dropped, rotated to lex-min start
  ConvexPolygon p = make_convex({pt(1, 0), pt(1, 1), pt(0, 1), pt(0, rat(1, 2)), pt(0, 0)});
  CHECK(p.size() == 4);
  CHECK(p.v[0] == pt(0, 0));
  CHECK_THROWS_AS(make_convex({pt(0, 0), pt(1, 1), pt(1, 0), pt(0, 1)}), DegenerateInput);
}

TEST_CASE("support data") {
  ConvexPolygon sq = unit_square();
  NormalCone mid = support_data(sq, pt(rat(1, 2), rat(0)));
  CHECK(mid.single());
  CHECK(mid.lo == pt(0, -1));

  NormalCone corner = support_data(sq, pt(0, 0));
  CHECK(!corner.single());
  CHECK(corner.lo == pt(-1, 0));
  CHECK(corner.hi == pt(0, -1));

  CHECK_THROWS_AS(support_data(sq, pt(rat(1, 2), rat(1, 2))), NotOnBoundary);
  CHECK_THROWS_AS(support_data(sq, pt(5, 5)), NotOnBoundary);
}

TEST_CASE("support cone angle equals exterior angle") {
  ConvexPolygon p = make_convex({pt(0, 0), pt(4, 0), pt(7, 4), pt(2, 6)});
  for (size_t i = 0; i < p.size(); ++i) {
    NormalCone c = support_data(p, p[i]);
    Vec2 prev_dir = p[i] - p[i + p.size() - 1];
    Vec2 next_dir = p[i + 1] - p[i];
    CHECK(c.lo.cross(c.hi) == prev_dir.cross(next_dir));
    CHECK(c.lo.dot(c.hi) == prev_dir.dot(next_dir));
  }
}

TEST_CASE("region containment") {
  Region r = region_from(unit_square());
  CHECK(region_contains_closed(r, pt(rat(1, 2), rat(1, 2))));
  CHECK(region_contains_closed(r, pt(0, 0)));
  CHECK(region_contains_closed(r, pt(rat(1, 2), rat(0))));
  CHECK(!region_contains_closed(r, pt(2, 2)));
  r.markers.push_back(pt(5, 5));
  CHECK(region_contains_closed(r, pt(5, 5)));
}

TEST_CASE("region with hole") {
  Region r;
  r.rings.push_back(Ring{{pt(0, 0), pt(3, 0), pt(3, 3), pt(0, 3)}, false});
  r.rings.push_back(Ring{{pt(1, 1), pt(2, 1), pt(2, 2), pt(1, 2)}, true});
  CHECK(region_area(r) == 8);
  CHECK(!region_contains_closed(r, pt(rat(3, 2), rat(3, 2))));
  CHECK(region_contains_closed(r, pt(rat(1, 2), rat(1, 2))));
  CHECK(region_contains_closed(r, pt(1, 1)));  // hole boundary is in the closure
}

TEST_CASE("affine maps") {
  AffineMap m{rat(2), rat(1), rat(0), rat(1), pt(3, -1)};
  AffineMap inv = m.inverse();
  AffineMap id = m.compose(inv);
  Point2 p = pt(rat(5, 7), rat(-2, 3));
  CHECK(id.apply(p) == p);
  CHECK(m.apply(inv.apply(p)) == p);

  ConvexPolygon sq = unit_square();
  ConvexPolygon img = transform(m, sq);
  CHECK(img.area() == sq.area() * rat_abs(m.det()));

  AffineMap mirror{rat(-1), rat(0), rat(0), rat(1), pt(0, 0)};
  ConvexPolygon mi = transform(mirror, sq);  // orientation restored
  CHECK(mi.area() == 1);
}

TEST_CASE("ring validation") {
  CHECK_THROWS_AS(region_from_ring({pt(0, 0), pt(2, 0), pt(0, 2), pt(2, 2)}),
                  MalformedRegion);  // bowtie
  CHECK_THROWS_AS(region_from_ring({pt(0, 0), pt(2, 2), pt(2, 0)}), MalformedRegion);  // cw
  Region ok = region_from_ring({pt(0, 0), pt(2, 0), pt(1, 1), pt(2, 2), pt(0, 2)});
  CHECK(region_area(ok) == 3);
}
