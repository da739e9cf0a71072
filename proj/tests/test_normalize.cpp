#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bmlab/normalize.hpp"
#include "bmlab/sweep.hpp"

using namespace bmlab;

namespace {

Point2 pt(long x, long y) { return {rat(x), rat(y)}; }
Point2 pt(Rat x, Rat y) { return {std::move(x), std::move(y)}; }

ConvexPolygon unit_square() {
  return make_convex({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)});
}

}  // namespace

TEST_CASE("max area triangle of a triangle is itself") {
  ConvexPolygon t = make_convex({pt(0, 0), pt(5, 1), pt(2, 4)});
  CHECK(max_area_triangle(t) == t);
}

TEST_CASE("max area triangle of the square") {
  ConvexPolygon sq = unit_square();
  ConvexPolygon t = max_area_triangle(sq);
  CHECK(t.area() == rat(1, 2));
  // brute-force oracle: every triple has area <= 1/2
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = i + 1; j < 4; ++j)
      for (size_t k = j + 1; k < 4; ++k) {
        Rat a2 = (sq.v[j] - sq.v[i]).cross(sq.v[k] - sq.v[i]);
        CHECK(a2 <= 1);
      }
  // tie-break: first triple in index order from the canonical start (0,0)
  CHECK(t.v[0] == pt(0, 0));
}

TEST_CASE("max area triangle hexagon brute force") {
  // irregular hexagon; oracle enumerates all C(6,3)=20 triples
  ConvexPolygon hex =
      make_convex({pt(0, 0), pt(4, -1), pt(7, 1), pt(8, 5), pt(3, 7), pt(-1, 3)});
  ConvexPolygon t = max_area_triangle(hex);
  Rat best(0);
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = i + 1; j < 6; ++j)
      for (size_t k = j + 1; k < 6; ++k) {
        Rat a2 = (hex.v[j] - hex.v[i]).cross(hex.v[k] - hex.v[i]);
        best = std::max(best, a2);
      }
  CHECK(t.area() * 2 == best);
}

TEST_CASE("radial projection") {
  ConvexPolygon box2 = make_convex({pt(-1, -1), pt(1, -1), pt(1, 1), pt(-1, 1)});
  CHECK(radial_projection(pt(2, 0), box2) == pt(1, 0));
  CHECK(radial_projection(pt(rat(1, 2), rat(1, 2)), box2) == pt(1, 1));
  ConvexPolygon tri = make_convex({pt(-1, -1), pt(2, -1), pt(-1, 2)});
  CHECK(radial_projection(pt(1, 1), tri) == pt(rat(1, 2), rat(1, 2)));

  ConvexPolygon off = make_convex({pt(5, 5), pt(6, 5), pt(6, 6)});
  CHECK_THROWS_AS(radial_projection(pt(1, 1), off), OriginOutside);
  CHECK_THROWS_AS(radial_projection(Point2{rat(0), rat(0)}, box2), BadParams);
}

TEST_CASE("normalize square pair") {
  Region a = region_from(unit_square());
  NormalizedScene sc = normalize_scene(a, a, rat(1, 2));
  CHECK(sc.T == frame::canonical_triangle());
  CHECK(sc.K.contains(sc.T));
  CHECK(sc.Tprime.contains(sc.K));
  CHECK(sc.gamma == 0);
  CHECK(sc.gap_a == 0);
  CHECK(sc.gap_b == 0);
  // K is the image of the unit square: area preserved ratio |K|/|T| = 2
  CHECK(sc.K.area() == sc.T.area() * 2);
  // A = B ⇒ Dt = A under t=1/2 (convexity not required for idempotent sum here)
  CHECK(area_exact(sc.Dt) == sc.K.area());
}

TEST_CASE("normalize square-plus-point gamma") {
  Region a = region_from(unit_square());
  a.markers.push_back(pt(rat(0), rat(3, 2)));
  NormalizedScene sc = normalize_scene(a, a, rat(1, 2), NormalizeOptions{Vec2{rat(0), rat(0)}});
  // gamma = t^2 gap + (1-t)^2 gap with gap the normalized image of 1/4;
  // areas scale by |det|: in the canonical frame |co A| - |A| = det * 1/4
  Rat d = rat_abs(sc.map.det());
  CHECK(sc.gap_a == d * rat(1, 4));
  CHECK(sc.gamma == d * rat(1, 8));
  // invariants of the frame: vertex distances within the surrogate bounds
  for (const auto& v : sc.K.v) {
    Rat r2 = v.norm2();
    CHECK(r2 >= frame::inradius2_T());
    CHECK(r2 <= frame::circumradius2_Tprime());
  }
}

TEST_CASE("normalize rejects bad inputs") {
  Region a = region_from(unit_square());
  CHECK_THROWS_AS(normalize_scene(Region{}, a, rat(1, 2)), EmptyRegion);
  CHECK_THROWS_AS(normalize_scene(a, a, rat(2, 3)), BadParams);
  Region marker_only;
  marker_only.markers.push_back(pt(0, 0));
  CHECK_THROWS_AS(normalize_scene(marker_only, a, rat(1, 2)), DegenerateInstance);
}

TEST_CASE("scene reproduction with recorded shift") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> c(-6, 6);
  for (int iter = 0; iter < 8; ++iter) {
    std::vector<Point2> pa, pb;
    for (int i = 0; i < 7; ++i) pa.push_back(pt(c(rng), c(rng)));
    for (int i = 0; i < 7; ++i) pb.push_back(pt(c(rng), c(rng)));
    ConvexPolygon ca, cb;
    try {
      ca = convex_hull(pa);
      cb = convex_hull(pb);
    } catch (const DegenerateInput&) {
      continue;
    }
    Region a = region_from(ca), b = region_from(cb);
    NormalizedScene sc = normalize_scene(a, b, rat(1, 3));
    // recompute from the normalized pair with shift pinned to zero
    NormalizedScene sc2 =
        normalize_scene(sc.A, sc.B, rat(1, 3), NormalizeOptions{Vec2{rat(0), rat(0)}});
    CHECK(sc2.A == sc.A);
    CHECK(sc2.B == sc.B);
    CHECK(sc2.K == sc.K);
    CHECK(sc2.T == sc.T);
    CHECK(sc2.Dt == sc.Dt);
    CHECK(sc2.gamma == sc.gamma);
    // and the recorded map of the reproduction is the identity
    CHECK(sc2.map.det() == 1);
    CHECK(sc2.map.apply(pt(1, 1)) == pt(1, 1));
  }
}

TEST_CASE("T inside K inside -2T across random scenes") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> c(-9, 9);
  for (int iter = 0; iter < 20; ++iter) {
    std::vector<Point2> pa, pb;
    for (int i = 0; i < 8; ++i) pa.push_back(pt(c(rng), c(rng)));
    for (int i = 0; i < 8; ++i) pb.push_back(pt(c(rng), c(rng)));
    ConvexPolygon ca, cb;
    try {
      ca = convex_hull(pa);
      cb = convex_hull(pb);
    } catch (const DegenerateInput&) {
      continue;
    }
    NormalizedScene sc =
        normalize_scene(region_from(ca), region_from(cb), rat(1, 2));
    CHECK(sc.K.contains(sc.T));
    CHECK(sc.Tprime.contains(sc.K));
    CHECK(sc.K.area() >= frame::area_T());
    CHECK(sc.K.area() <= rat(4) * frame::area_T());
  }
}
