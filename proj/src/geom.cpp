#include "bmlab/geom.hpp"

#include <algorithm>

namespace bmlab {

int cross_sign(const Vec2& u, const Vec2& v) {
  // sign of u.x v.y - u.y v.x == sign of uxn*vyn*uyd*vxd - uyn*vxn*uxd*vyd
  Int lhs = u.x.get_num() * v.y.get_num() * u.y.get_den() * v.x.get_den();
  Int rhs = u.y.get_num() * v.x.get_num() * u.x.get_den() * v.y.get_den();
  return mpz_cmp(lhs.get_mpz_t(), rhs.get_mpz_t()) > 0
             ? 1
             : (mpz_cmp(lhs.get_mpz_t(), rhs.get_mpz_t()) < 0 ? -1 : 0);
}

Rat dist2(const Point2& a, const Point2& b) {
  Rat dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

bool point_on_segment(const Point2& p, const Segment& s) {
  if (orient(s.a, s.b, p) != 0) return false;
  return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
         std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

std::optional<Point2> line_intersect(const Point2& p, const Vec2& d,
                                     const Point2& q, const Vec2& e) {
  Rat denom = d.cross(e);
  if (sgn(denom) == 0) return std::nullopt;
  Rat t = (q - p).cross(e) / denom;
  return p + d * t;
}

void BBox::expand(const Point2& p) {
  if (!valid) {
    xmin = xmax = p.x;
    ymin = ymax = p.y;
    valid = true;
    return;
  }
  xmin = std::min(xmin, p.x);
  xmax = std::max(xmax, p.x);
  ymin = std::min(ymin, p.y);
  ymax = std::max(ymax, p.y);
}

void BBox::expand(const BBox& o) {
  if (!o.valid) return;
  expand(Point2{o.xmin, o.ymin});
  expand(Point2{o.xmax, o.ymax});
}

bool BBox::overlaps(const BBox& o) const {
  if (!valid || !o.valid) return false;
  return !(xmax < o.xmin || o.xmax < xmin || ymax < o.ymin || o.ymax < ymin);
}

Rat ConvexPolygon::area() const {
  Rat twice(0);
  for (size_t i = 0; i < v.size(); ++i) twice += v[i].cross(v[(i + 1) % v.size()]);
  return twice / 2;
}

BBox ConvexPolygon::bbox() const {
  BBox b;
  for (const auto& p : v) b.expand(p);
  return b;
}

Point2 ConvexPolygon::centroid() const {
  Rat a6(0);
  Vec2 c;
  for (size_t i = 0; i < v.size(); ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % v.size()];
    Rat w = p.cross(q);
    a6 += w;
    c = c + (p + q) * w;
  }
  return c / (a6 * 3);
}

bool ConvexPolygon::contains(const Point2& p) const {
  for (size_t i = 0; i < v.size(); ++i)
    if (orient(v[i], v[(i + 1) % v.size()], p) < 0) return false;
  return true;
}

bool ConvexPolygon::contains_strict(const Point2& p) const {
  for (size_t i = 0; i < v.size(); ++i)
    if (orient(v[i], v[(i + 1) % v.size()], p) <= 0) return false;
  return true;
}

bool ConvexPolygon::contains(const ConvexPolygon& q) const {
  for (const auto& p : q.v)
    if (!contains(p)) return false;
  return true;
}

bool ConvexPolygon::on_boundary(const Point2& p) const {
  for (size_t i = 0; i < v.size(); ++i)
    if (point_on_segment(p, edge(i))) return true;
  return false;
}

ConvexPolygon make_convex(std::vector<Point2> ccw) {
  if (ccw.size() < 3) throw DegenerateInput("convex polygon needs >= 3 vertices");
  // drop consecutive duplicates and collinear middles
  std::vector<Point2> out;
  const size_t n = ccw.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& prev = ccw[(i + n - 1) % n];
    const Point2& cur = ccw[i];
    const Point2& next = ccw[(i + 1) % n];
    if (cur == next) continue;
    if (orient(prev, cur, next) == 0 && cur != prev) continue;
    out.push_back(cur);
  }
  if (out.size() < 3) throw DegenerateInput("degenerate polygon");
  for (size_t i = 0; i < out.size(); ++i) {
    if (orient(out[i], out[(i + 1) % out.size()], out[(i + 2) % out.size()]) <= 0)
      throw DegenerateInput("vertices not strictly convex ccw");
  }
  size_t start = 0;
  for (size_t i = 1; i < out.size(); ++i)
    if (lex_less(out[i], out[start])) start = i;
  std::rotate(out.begin(), out.begin() + start, out.end());
  ConvexPolygon p;
  p.v = std::move(out);
  return p;
}

ConvexPolygon convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw DegenerateInput("hull needs >= 3 distinct points");
  auto build = [&](bool upper) {
    std::vector<Point2> chain;
    for (size_t idx = 0; idx < pts.size(); ++idx) {
      const Point2& p = pts[upper ? pts.size() - 1 - idx : idx];
      while (chain.size() >= 2 &&
             orient(chain[chain.size() - 2], chain.back(), p) <= 0)
        chain.pop_back();
      chain.push_back(p);
    }
    return chain;
  };
  std::vector<Point2> lower = build(false), upper = build(true);
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  if (lower.size() < 3) throw DegenerateInput("all points collinear");
  ConvexPolygon p;
  p.v = std::move(lower);  // already ccw starting at lex-min
  return p;
}

NormalCone support_data(const ConvexPolygon& p, const Point2& q) {
  const size_t n = p.size();
  for (size_t i = 0; i < n; ++i) {
    if (p[i] == q) {
      Vec2 prev_dir = p[i] - p[(i + n - 1) % n];
      Vec2 next_dir = p[(i + 1) % n] - p[i];
      return {Vec2{prev_dir.y, -prev_dir.x}, Vec2{next_dir.y, -next_dir.x}};
    }
  }
  for (size_t i = 0; i < n; ++i) {
    Segment e = p.edge(i);
    if (point_on_segment(q, e) && q != e.a && q != e.b) {
      Vec2 d = e.dir();
      Vec2 nrm{d.y, -d.x};
      return {nrm, nrm};
    }
  }
  throw NotOnBoundary();
}

Region region_from(const ConvexPolygon& p) {
  Region r;
  r.rings.push_back(Ring{p.v, false});
  return r;
}

namespace {

bool ring_is_simple(const std::vector<Point2>& pts) {
  const size_t n = pts.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    Segment si{pts[i], pts[(i + 1) % n]};
    if (si.a == si.b) return false;
    for (size_t j = i + 1; j < n; ++j) {
      Segment sj{pts[j], pts[(j + 1) % n]};
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      // proper crossing test
      int o1 = orient(si.a, si.b, sj.a), o2 = orient(si.a, si.b, sj.b);
      int o3 = orient(sj.a, sj.b, si.a), o4 = orient(sj.a, sj.b, si.b);
      if (o1 * o2 < 0 && o3 * o4 < 0) return false;
      if (!adjacent) {
        // any touching between non-adjacent edges is malformed
        if (point_on_segment(sj.a, si) || point_on_segment(sj.b, si) ||
            point_on_segment(si.a, sj) || point_on_segment(si.b, sj))
          return false;
      } else {
        // adjacent edges may share exactly their common endpoint
        if (o1 == 0 && o2 == 0) return false;  // collinear overlap
      }
    }
  }
  return true;
}

Rat ring_signed_area(const std::vector<Point2>& pts) {
  Rat twice(0);
  for (size_t i = 0; i < pts.size(); ++i)
    twice += pts[i].cross(pts[(i + 1) % pts.size()]);
  return twice / 2;
}

}  // namespace

Region region_from_ring(std::vector<Point2> ccw) {
  // drop consecutive duplicates / collinear middles first
  std::vector<Point2> out;
  const size_t n = ccw.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& prev = ccw[(i + n - 1) % n];
    const Point2& cur = ccw[i];
    const Point2& next = ccw[(i + 1) % n];
    if (cur == next) continue;
    if (cur != prev && orient(prev, cur, next) == 0 &&
        sgn((cur - prev).dot(next - cur)) > 0)
      continue;
    out.push_back(cur);
  }
  if (out.size() < 3 || !ring_is_simple(out)) throw MalformedRegion("ring not a simple loop");
  if (sgn(ring_signed_area(out)) <= 0) throw MalformedRegion("ring not ccw");
  Region r;
  r.rings.push_back(Ring{std::move(out), false});
  return r;
}

void canonical_order(Region& r) {
  for (auto& ring : r.rings) {
    size_t mn = 0;
    for (size_t i = 1; i < ring.pts.size(); ++i)
      if (lex_less(ring.pts[i], ring.pts[mn])) mn = i;
    std::rotate(ring.pts.begin(), ring.pts.begin() + mn, ring.pts.end());
  }
  std::sort(r.rings.begin(), r.rings.end(), [](const Ring& a, const Ring& b) {
    if (a.pts[0] != b.pts[0]) return lex_less(a.pts[0], b.pts[0]);
    if (a.hole != b.hole) return !a.hole;
    if (a.pts.size() != b.pts.size()) return a.pts.size() < b.pts.size();
    for (size_t i = 0; i < a.pts.size(); ++i)
      if (a.pts[i] != b.pts[i]) return lex_less(a.pts[i], b.pts[i]);
    return false;
  });
  std::sort(r.markers.begin(), r.markers.end(), lex_less);
  r.markers.erase(std::unique(r.markers.begin(), r.markers.end()), r.markers.end());
}

Rat region_area(const Region& r) {
  Rat total(0);
  for (const auto& ring : r.rings) {
    Rat a = ring_signed_area(ring.pts);
    total += ring.hole ? -a : a;
  }
  return total;
}

BBox region_bbox(const Region& r) {
  BBox b;
  for (const auto& ring : r.rings)
    for (const auto& p : ring.pts) b.expand(p);
  for (const auto& m : r.markers) b.expand(m);
  return b;
}

namespace {

// strict interior test by crossing parity (pts assumed simple loop)
bool point_strictly_inside_ring(const std::vector<Point2>& pts, const Point2& p) {
  bool inside = false;
  const size_t n = pts.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& a = pts[i];
    const Point2& b = pts[(i + 1) % n];
    // half-open rule on y-span, ray toward +x
    const bool a_below = a.y <= p.y, b_below = b.y <= p.y;
    if (a_below == b_below) continue;
    // x coordinate of crossing vs p.x
    // (p.y - a.y) / (b.y - a.y) * (b.x - a.x) + a.x  >  p.x
    Rat dy = b.y - a.y;
    Rat lhs = (p.y - a.y) * (b.x - a.x) + a.x * dy - p.x * dy;
    if (sgn(dy) < 0) lhs = -lhs;
    if (sgn(lhs) > 0) inside = !inside;
  }
  return inside;
}

bool point_on_ring(const std::vector<Point2>& pts, const Point2& p) {
  const size_t n = pts.size();
  for (size_t i = 0; i < n; ++i)
    if (point_on_segment(p, Segment{pts[i], pts[(i + 1) % n]})) return true;
  return false;
}

}  // namespace

bool region_contains_closed(const Region& r, const Point2& p) {
  for (const auto& m : r.markers)
    if (m == p) return true;
  int coverage = 0;
  for (const auto& ring : r.rings) {
    if (point_on_ring(ring.pts, p)) return true;
    if (point_strictly_inside_ring(ring.pts, p)) coverage += ring.hole ? -1 : 1;
  }
  return coverage >= 1;
}

ConvexPolygon region_hull(const Region& r) {
  std::vector<Point2> pts;
  for (const auto& ring : r.rings)
    for (const auto& p : ring.pts) pts.push_back(p);
  for (const auto& m : r.markers) pts.push_back(m);
  if (pts.size() < 3) throw EmptyRegion("hull of (near-)empty region");
  return convex_hull(pts);
}

AffineMap AffineMap::identity() { return {Rat(1), Rat(0), Rat(0), Rat(1), Vec2{}}; }
AffineMap AffineMap::translation(const Vec2& t) { return {Rat(1), Rat(0), Rat(0), Rat(1), t}; }
AffineMap AffineMap::scaling(const Rat& s) { return {s, Rat(0), Rat(0), s, Vec2{}}; }

Point2 AffineMap::apply(const Point2& p) const {
  return {m00 * p.x + m01 * p.y + shift.x, m10 * p.x + m11 * p.y + shift.y};
}

Vec2 AffineMap::apply_linear(const Vec2& v) const {
  return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
}

AffineMap AffineMap::compose(const AffineMap& g) const {
  AffineMap out;
  out.m00 = m00 * g.m00 + m01 * g.m10;
  out.m01 = m00 * g.m01 + m01 * g.m11;
  out.m10 = m10 * g.m00 + m11 * g.m10;
  out.m11 = m10 * g.m01 + m11 * g.m11;
  out.shift = apply(g.shift);
  return out;
}

AffineMap AffineMap::inverse() const {
  Rat d = det();
  if (sgn(d) == 0) throw DegenerateInput("singular affine map");
  AffineMap inv;
  inv.m00 = m11 / d;
  inv.m01 = -m01 / d;
  inv.m10 = -m10 / d;
  inv.m11 = m00 / d;
  inv.shift = -inv.apply_linear(shift);
  return inv;
}

ConvexPolygon transform(const AffineMap& m, const ConvexPolygon& p) {
  std::vector<Point2> pts;
  pts.reserve(p.size());
  for (const auto& q : p.v) pts.push_back(m.apply(q));
  if (sgn(m.det()) < 0) std::reverse(pts.begin(), pts.end());
  return make_convex(std::move(pts));
}

Region transform(const AffineMap& m, const Region& r) {
  const bool flip = sgn(m.det()) < 0;
  if (sgn(m.det()) == 0) throw DegenerateInput("singular affine map");
  Region out;
  for (const auto& ring : r.rings) {
    Ring nr;
    nr.hole = ring.hole;
    nr.pts.reserve(ring.pts.size());
    for (const auto& p : ring.pts) nr.pts.push_back(m.apply(p));
    if (flip) std::reverse(nr.pts.begin(), nr.pts.end());
    out.rings.push_back(std::move(nr));
  }
  for (const auto& p : r.markers) out.markers.push_back(m.apply(p));
  canonical_order(out);
  return out;
}

Region translate(const Region& r, const Vec2& t) {
  return transform(AffineMap::translation(t), r);
}

Region scale(const Region& r, const Rat& s) {
  if (sgn(s) == 0) throw BadParams("scale by zero");
  return transform(AffineMap::scaling(s), r);
}

}  // namespace bmlab
