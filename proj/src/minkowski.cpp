#include "bmlab/minkowski.hpp"

#include <algorithm>

namespace bmlab {

namespace {

size_t bottom_index(const ConvexPolygon& p) {
  size_t best = 0;
  for (size_t i = 1; i < p.size(); ++i) {
    const Point2& a = p.v[i];
    const Point2& b = p.v[best];
    if (a.y < b.y || (a.y == b.y && a.x < b.x)) best = i;
  }
  return best;
}

// edge direction order around the circle starting at angle 0 (positive x axis)
int angle_half(const Vec2& u) {
  if (sgn(u.y) > 0 || (sgn(u.y) == 0 && sgn(u.x) > 0)) return 0;
  return 1;
}

// -1: u strictly before v; 0: parallel same direction; 1: strictly after
int angle_cmp(const Vec2& u, const Vec2& v) {
  int hu = angle_half(u), hv = angle_half(v);
  if (hu != hv) return hu < hv ? -1 : 1;
  int cr = sgn(u.cross(v));
  if (cr > 0) return -1;
  if (cr < 0) return 1;
  return 0;
}

}  // namespace

TaggedSum minkowski_sum_convex_tagged(const ConvexPolygon& p, const ConvexPolygon& q) {
  const size_t np = p.size(), nq = q.size();
  size_t ip = bottom_index(p), iq = bottom_index(q);
  size_t cp = 0, cq = 0;  // edges consumed
  Point2 cur = p.v[ip] + q.v[iq];
  TaggedSum out;
  std::vector<Point2> verts;
  while (cp < np || cq < nq) {
    int take;  // 0 take p edge, 1 take q edge
    if (cp == np)
      take = 1;
    else if (cq == nq)
      take = 0;
    else {
      int c = angle_cmp(p.edge(ip).dir(), q.edge(iq).dir());
      take = c <= 0 ? 0 : 1;  // ties: p-part first
    }
    verts.push_back(cur);
    if (take == 0) {
      Vec2 d = p.edge(ip).dir();
      out.edges.push_back(TaggedEdge{cur, cur + d, 0, ip % np, iq % nq});
      cur = cur + d;
      ip = (ip + 1) % np;
      ++cp;
    } else {
      Vec2 d = q.edge(iq).dir();
      out.edges.push_back(TaggedEdge{cur, cur + d, 1, iq % nq, ip % np});
      cur = cur + d;
      iq = (iq + 1) % nq;
      ++cq;
    }
  }
  out.poly = make_convex(std::move(verts));
  return out;
}

ConvexPolygon minkowski_sum_convex(const ConvexPolygon& p, const ConvexPolygon& q) {
  return minkowski_sum_convex_tagged(p, q).poly;
}

Region minkowski_sum_region(const Region& a0, const Region& b0) {
  if (a0.is_empty() || b0.is_empty()) throw EmptyRegion("minkowski sum of empty region");
  Region a = canonicalize(a0);
  Region b = canonicalize(b0);
  std::vector<ConvexPolygon> pa = convex_pieces(a);
  std::vector<ConvexPolygon> pb = convex_pieces(b);

  std::vector<ConvexPolygon> pieces;
  pieces.reserve(pa.size() * pb.size() + pa.size() * b.markers.size() +
                 pb.size() * a.markers.size());
  for (const auto& x : pa)
    for (const auto& y : pb) pieces.push_back(minkowski_sum_convex(x, y));
  for (const auto& m : b.markers)
    for (const auto& x : pa) {
      ConvexPolygon t = x;
      for (auto& v : t.v) v = v + m;
      pieces.push_back(make_convex(std::move(t.v)));
    }
  for (const auto& m : a.markers)
    for (const auto& y : pb) {
      ConvexPolygon t = y;
      for (auto& v : t.v) v = v + m;
      pieces.push_back(make_convex(std::move(t.v)));
    }
  std::vector<Point2> marker_sums;
  for (const auto& ma : a.markers)
    for (const auto& mb : b.markers) marker_sums.push_back(ma + mb);

  if (pieces.empty()) {
    Region out;
    std::sort(marker_sums.begin(), marker_sums.end(), lex_less);
    marker_sums.erase(std::unique(marker_sums.begin(), marker_sums.end()),
                      marker_sums.end());
    out.markers = std::move(marker_sums);
    return out;
  }
  return union_convex(pieces, marker_sums);
}

HullGapResult hull_gap(const Region& r) {
  if (r.is_empty()) throw EmptyRegion("hull gap of empty region");
  ConvexPolygon hull = region_hull(r);
  Rat gap = hull.area() - area_exact(r);
  return {std::move(hull), gap};
}

}  // namespace bmlab
