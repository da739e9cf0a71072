#include "bmlab/normalize.hpp"

#include <algorithm>

#include "bmlab/search.hpp"
#include "bmlab/sweep.hpp"

namespace bmlab {

namespace frame {

const ConvexPolygon& canonical_triangle() {
  static const ConvexPolygon t = make_convex(
      {{rat(-1, 3), rat(-1, 3)}, {rat(2, 3), rat(-1, 3)}, {rat(-1, 3), rat(2, 3)}});
  return t;
}

const ConvexPolygon& canonical_triangle_neg2() {
  static const ConvexPolygon t = make_convex(
      {{rat(2, 3), rat(2, 3)}, {rat(-4, 3), rat(2, 3)}, {rat(2, 3), rat(-4, 3)}});
  return t;
}

}  // namespace frame

ConvexPolygon max_area_triangle(const ConvexPolygon& k) {
  const size_t n = k.size();
  if (n < 3) throw DegenerateInput("max_area_triangle needs >= 3 vertices");
  Rat best(-1);
  size_t bi = 0, bj = 1, bk = 2;
  for (size_t i = 0; i + 2 < n; ++i)
    for (size_t j = i + 1; j + 1 < n; ++j)
      for (size_t l = j + 1; l < n; ++l) {
        Rat twice = (k.v[j] - k.v[i]).cross(k.v[l] - k.v[i]);
        if (twice > best) {
          best = twice;
          bi = i;
          bj = j;
          bk = l;
        }
      }
  return make_convex({k.v[bi], k.v[bj], k.v[bk]});
}

Point2 radial_projection(const Point2& p, const ConvexPolygon& e) {
  const Point2 o{rat(0), rat(0)};
  if (p == o) throw BadParams("radial projection of the origin");
  if (!e.contains_strict(o)) throw OriginOutside();
  for (size_t i = 0; i < e.size(); ++i) {
    Segment s = e.edge(i);
    Vec2 d = s.dir();
    Rat dp = d.cross(p);
    if (sgn(dp) == 0) continue;  // edge parallel to the ray
    Rat w = -s.a.cross(p) / dp;
    if (sgn(w) < 0 || w > 1) continue;
    Point2 q = s.a + d * w;
    // same side as p and nonzero
    if (sgn(q.dot(p)) <= 0) continue;
    return q;
  }
  throw NotOnBoundary("radial projection missed the boundary");
}

namespace {

// affine frame that sends the maximal triangle of co(r) to the canonical one
AffineMap hull_frame(const Region& r) {
  ConvexPolygon hull = region_hull(r);
  ConvexPolygon tri = max_area_triangle(hull);
  const ConvexPolygon& target = frame::canonical_triangle();
  Point2 bary = (tri.v[0] + tri.v[1] + tri.v[2]) / rat(3);
  // M (tri_i - bary) = target_i for i = 0..2
  Vec2 u1 = tri.v[1] - tri.v[0], u2 = tri.v[2] - tri.v[0];
  Vec2 w1 = target.v[1] - target.v[0], w2 = target.v[2] - target.v[0];
  Rat det = u1.cross(u2);
  if (sgn(det) == 0) throw DegenerateInstance("flat maximal triangle");
  // M = [w1 w2] [u1 u2]^{-1}
  AffineMap m;
  m.m00 = (w1.x * u2.y - w2.x * u1.y) / det;
  m.m01 = (w2.x * u1.x - w1.x * u2.x) / det;
  m.m10 = (w1.y * u2.y - w2.y * u1.y) / det;
  m.m11 = (w2.y * u1.x - w1.y * u2.x) / det;
  Point2 t0_img = m.apply_linear(tri.v[0] - bary);
  m.shift = target.v[0] - t0_img;
  return m;
}

}  // namespace

Vec2 align_translation(const Region& a, const Region& b) {
  // search in the hull frame of a so the result is affine-equivariant
  AffineMap fa = hull_frame(a);
  Region a_f = transform(fa, a);
  Region b_f = transform(fa, b);
  ConvexPolygon ca = region_hull(a_f), cb = region_hull(b_f);
  auto objective = [&](const Vec2& x) {
    std::vector<Point2> pts = ca.v;
    for (const auto& v : cb.v) pts.push_back(v + x);
    return convex_hull(pts).area();
  };
  Point2 seed0 = ca.centroid() - cb.centroid();
  PatternSearchResult r = pattern_search_2d(
      objective, {Vec2{rat(0), rat(0)}, seed0}, rat(1, 2), rat(1, 1u << 20));
  return fa.inverse().apply_linear(r.arg);
}

NormalizedScene normalize_scene(const Region& a0, const Region& b0, const Rat& t,
                                const NormalizeOptions& opts) {
  if (a0.is_empty() || b0.is_empty()) throw EmptyRegion("normalize of empty region");
  if (sgn(t) <= 0 || t > rat(1, 2)) throw BadParams("t must lie in (0, 1/2]");
  Region a = canonicalize(a0);
  if (!a.has_material()) throw DegenerateInstance("A has empty interior");
  Region b_raw = canonicalize(b0);
  if (!b_raw.has_material()) throw DegenerateInstance("B has empty interior");

  Vec2 shift = opts.b_shift ? *opts.b_shift : align_translation(a, b_raw);
  Region b = translate(b_raw, shift);

  // K = co(A ∪ B)
  std::vector<Point2> all;
  for (const Region* r : {&a, &b}) {
    for (const auto& ring : r->rings)
      for (const auto& p : ring.pts) all.push_back(p);
    for (const auto& m : r->markers) all.push_back(m);
  }
  ConvexPolygon k0;
  try {
    k0 = convex_hull(all);
  } catch (const DegenerateInput&) {
    throw DegenerateInstance("K has empty interior");
  }
  ConvexPolygon tri = max_area_triangle(k0);

  // affine map: tri -> canonical triangle, barycenter -> origin
  const ConvexPolygon& target = frame::canonical_triangle();
  Point2 bary = (tri.v[0] + tri.v[1] + tri.v[2]) / rat(3);
  Vec2 u1 = tri.v[1] - tri.v[0], u2 = tri.v[2] - tri.v[0];
  Vec2 w1 = target.v[1] - target.v[0], w2 = target.v[2] - target.v[0];
  Rat det = u1.cross(u2);
  if (sgn(det) == 0) throw DegenerateInstance("flat maximal triangle");
  AffineMap n;
  n.m00 = (w1.x * u2.y - w2.x * u1.y) / det;
  n.m01 = (w2.x * u1.x - w1.x * u2.x) / det;
  n.m10 = (w1.y * u2.y - w2.y * u1.y) / det;
  n.m11 = (w2.y * u1.x - w1.y * u2.x) / det;
  n.shift = -n.apply_linear(bary);

  NormalizedScene sc;
  sc.t = t;
  sc.map = n;
  sc.b_shift = shift;
  sc.A = transform(n, a);
  sc.B = transform(n, b);
  sc.K = transform(n, k0);
  sc.T = transform(n, tri);
  sc.Tprime = frame::canonical_triangle_neg2();
  if (!(sc.T == frame::canonical_triangle()))
    throw DegenerateInstance("triangle normalization failed");
  if (!sc.K.contains(sc.T) || !sc.Tprime.contains(sc.K))
    throw DegenerateInstance("T ⊂ K ⊂ -2T violated");

  sc.coA = region_hull(sc.A);
  sc.coB = region_hull(sc.B);
  sc.Dt = minkowski_sum_region(scale(sc.A, t), scale(sc.B, Rat(1) - t));
  sc.dt_tagged = minkowski_sum_convex_tagged(transform(AffineMap::scaling(t), sc.coA),
                                             transform(AffineMap::scaling(Rat(1) - t), sc.coB));
  sc.coDt = region_hull(sc.Dt);
  if (!(sc.coDt == sc.dt_tagged.poly))
    throw DegenerateInstance("hull-sum identity violated");

  sc.gap_a = sc.coA.area() - area_exact(sc.A);
  sc.gap_b = sc.coB.area() - area_exact(sc.B);
  sc.gamma = t * t * sc.gap_a + (Rat(1) - t) * (Rat(1) - t) * sc.gap_b;
  return sc;
}

}  // namespace bmlab
