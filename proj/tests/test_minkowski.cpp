#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "bmlab/minkowski.hpp"

using namespace bmlab;

namespace {

Point2 pt(long x, long y) { return {rat(x), rat(y)}; }
Point2 pt(Rat x, Rat y) { return {std::move(x), std::move(y)}; }

ConvexPolygon unit_square() {
  return make_convex({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)});
}
ConvexPolygon tri() { return make_convex({pt(0, 0), pt(1, 0), pt(0, 1)}); }

std::mt19937 rng(99);

ConvexPolygon random_convex() {
  std::uniform_int_distribution<long> c(-9, 9);
  while (true) {
    std::vector<Point2> pts;
    for (int i = 0; i < 7; ++i) pts.push_back(pt(c(rng), c(rng)));
    try {
      return convex_hull(pts);
    } catch (const DegenerateInput&) {
    }
  }
}

// multiset of edge vectors
std::map<std::pair<std::string, std::string>, int> edge_vectors(const ConvexPolygon& p) {
  std::map<std::pair<std::string, std::string>, int> m;
  for (size_t i = 0; i < p.size(); ++i) {
    Vec2 d = p.edge(i).dir();
    m[{to_string(d.x), to_string(d.y)}]++;
  }
  return m;
}

}  // namespace

TEST_CASE("square plus square") {
  ConvexPolygon s = minkowski_sum_convex(unit_square(), unit_square());
  CHECK(s.area() == 4);
  CHECK(s.v == std::vector<Point2>{pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)});
}

TEST_CASE("square plus triangle pentagon") {
  ConvexPolygon s = minkowski_sum_convex(unit_square(), tri());
  CHECK(s.area() == rat(7, 2));
  CHECK(s.v == std::vector<Point2>{pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 2), pt(0, 2)});
}

TEST_CASE("sum with a single point translates") {
  // degenerate "polygon" is not allowed; use region route with a marker
  Region p = region_from(unit_square());
  Region q;
  q.markers.push_back(pt(3, -2));
  Region s = minkowski_sum_region(p, q);
  CHECK(s == canonicalize(translate(p, pt(3, -2))));
}

TEST_CASE("perimeter additivity as edge-vector multiset") {
  for (int iter = 0; iter < 30; ++iter) {
    ConvexPolygon p = random_convex(), q = random_convex();
    ConvexPolygon s = minkowski_sum_convex(p, q);
    auto mp = edge_vectors(p), mq = edge_vectors(q), ms = edge_vectors(s);
    // merge p and q multisets, combine parallel directions
    std::map<std::pair<std::string, std::string>, int> expect;
    auto add = [&](const Vec2& d) {
      expect[{to_string(d.x), to_string(d.y)}]++;
    };
    (void)mp;
    (void)mq;
    for (size_t i = 0; i < p.size(); ++i) add(p.edge(i).dir());
    for (size_t i = 0; i < q.size(); ++i) add(q.edge(i).dir());
    // collapse collinear same-direction vectors by summing
    std::map<std::pair<std::string, std::string>, Vec2> by_dir_expect, by_dir_got;
    auto canon_dir = [](Vec2 d) {
      Rat g = rat_abs(d.x) + rat_abs(d.y);
      return std::make_pair(to_string(d.x / g), to_string(d.y / g));
    };
    for (size_t i = 0; i < p.size(); ++i) {
      Vec2 d = p.edge(i).dir();
      auto& acc = by_dir_expect[canon_dir(d)];
      acc = acc + d;
    }
    for (size_t i = 0; i < q.size(); ++i) {
      Vec2 d = q.edge(i).dir();
      auto& acc = by_dir_expect[canon_dir(d)];
      acc = acc + d;
    }
    for (size_t i = 0; i < s.size(); ++i) {
      Vec2 d = s.edge(i).dir();
      auto& acc = by_dir_got[canon_dir(d)];
      acc = acc + d;
    }
    CHECK(by_dir_expect.size() == by_dir_got.size());
    for (const auto& [k, v] : by_dir_expect) {
      auto it = by_dir_got.find(k);
      REQUIRE(it != by_dir_got.end());
      CHECK(it->second == v);
    }
  }
}

TEST_CASE("mixed area inequality") {
  for (int iter = 0; iter < 30; ++iter) {
    ConvexPolygon p = random_convex(), q = random_convex();
    ConvexPolygon s = minkowski_sum_convex(p, q);
    Rat va = p.area(), vb = q.area();
    Rat mixed2 = s.area() - va - vb;  // = 2 V(P,Q)
    CHECK(sgn(mixed2) >= 0);
    // V >= sqrt(va vb): compare (mixed2/2)^2 >= va vb
    CHECK(mixed2 * mixed2 >= 4 * va * vb);
  }
}

TEST_CASE("tagged merge provenance") {
  // square and rotated square: distinct slopes give 8 tagged edges
  ConvexPolygon a = unit_square();
  ConvexPolygon b = make_convex({pt(1, 0), pt(2, 1), pt(1, 2), pt(0, 1)});
  TaggedSum s = minkowski_sum_convex_tagged(a, b);
  CHECK(s.edges.size() == 8);
  CHECK(s.poly.size() == 8);
  int from_a = 0;
  for (const auto& e : s.edges) from_a += e.src == 0 ? 1 : 0;
  CHECK(from_a == 4);
  // each A edge appears exactly once with its own direction
  for (const auto& e : s.edges) {
    const ConvexPolygon& src = e.src == 0 ? a : b;
    CHECK((e.b - e.a) == src.edge(e.edge_index).dir());
    const ConvexPolygon& other = e.src == 0 ? b : a;
    // stationary vertex really is the support vertex: edge lies on the sum boundary
    Point2 check = src.edge(e.edge_index).a + other[e.other_vertex];
    CHECK(check == e.a);
  }

  // parallel edges (tie) get split: square plus square keeps 8 tagged edges
  TaggedSum tie = minkowski_sum_convex_tagged(a, a);
  CHECK(tie.edges.size() == 8);
  CHECK(tie.poly.size() == 4);
}

TEST_CASE("region sum agrees with convex sum") {
  for (int iter = 0; iter < 10; ++iter) {
    ConvexPolygon p = random_convex(), q = random_convex();
    Region rs = minkowski_sum_region(region_from(p), region_from(q));
    ConvexPolygon cs = minkowski_sum_convex(p, q);
    CHECK(rs == canonicalize(region_from(cs)));
  }
}

TEST_CASE("region sum commutes") {
  Region a = boolean_op(BoolOp::Union, region_from(random_convex()),
                        region_from(random_convex()));
  Region b = region_from(random_convex());
  CHECK(minkowski_sum_region(a, b) == minkowski_sum_region(b, a));
}

TEST_CASE("square-plus-point self sum reproduces the tight hull gap") {
  Region a = region_from(unit_square());
  a.markers.push_back(pt(rat(0), rat(3, 2)));  // lambda = 1/2
  Region sum = minkowski_sum_region(a, a);
  CHECK(area_exact(sum) == rat(9, 2));
  auto hg = hull_gap(sum);
  CHECK(hg.gap == rat(1, 2));  // exactly |co A \ A| + |co A \ A| = 1/4 + 1/4

  // the marker sum (0,3) is a hull vertex and must survive canonicalization
  bool has_top_marker = false;
  for (const auto& m : sum.markers) has_top_marker |= (m == pt(0, 3));
  CHECK(has_top_marker);
}

TEST_CASE("empty inputs rejected") {
  Region e;
  CHECK_THROWS_AS(minkowski_sum_region(e, region_from(unit_square())), EmptyRegion);
}
