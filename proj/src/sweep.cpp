#include "bmlab/sweep.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace bmlab {

namespace {

// Non-vertical edge, left-to-right; dw[set] is the winding change when a
// vertical ray crosses it upward.
struct SEdge {
  Point2 l, r;
  int dw[2] = {0, 0};

  Rat y_at(const Rat& x) const {
    return l.y + (x - l.x) * (r.y - l.y) / (r.x - l.x);
  }
};

struct Trap {
  Rat x0, x1;
  Rat ylo0, ylo1, yhi0, yhi1;

  Rat area() const { return (x1 - x0) * ((yhi0 - ylo0) + (yhi1 - ylo1)) / 2; }
};

void collect_edges(const Region& reg, int set_id, std::vector<SEdge>& out) {
  for (const auto& ring : reg.rings) {
    const int w = ring.hole ? -1 : 1;
    const size_t n = ring.pts.size();
    for (size_t i = 0; i < n; ++i) {
      const Point2& a = ring.pts[i];
      const Point2& b = ring.pts[(i + 1) % n];
      if (a.x == b.x) continue;  // vertical: no slab coverage
      SEdge e;
      if (a.x < b.x) {
        e.l = a;
        e.r = b;
        e.dw[set_id] = w;
      } else {
        e.l = b;
        e.r = a;
        e.dw[set_id] = -w;
      }
      out.push_back(std::move(e));
    }
  }
}

// x-coordinates of proper pairwise crossings (slab cuts); bbox-pruned.
void crossing_xs(const std::vector<SEdge>& edges, std::vector<Rat>& xs) {
  struct Item {
    Rat xmin, xmax, ymin, ymax;
    size_t idx;
  };
  std::vector<Item> items;
  items.reserve(edges.size());
  for (size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    items.push_back({e.l.x, e.r.x, std::min(e.l.y, e.r.y), std::max(e.l.y, e.r.y), i});
  }
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.xmin < b.xmin; });
  for (size_t i = 0; i < items.size(); ++i) {
    for (size_t j = i + 1; j < items.size(); ++j) {
      if (items[j].xmin > items[i].xmax) break;
      if (items[j].ymin > items[i].ymax || items[j].ymax < items[i].ymin) continue;
      const SEdge& e1 = edges[items[i].idx];
      const SEdge& e2 = edges[items[j].idx];
      Vec2 d1 = e1.r - e1.l, d2 = e2.r - e2.l;
      Rat denom = d1.cross(d2);
      if (sgn(denom) == 0) continue;  // parallel or collinear: no slab cut needed
      Rat t = (e2.l - e1.l).cross(d2) / denom;
      if (sgn(t) < 0 || t > 1) continue;
      Rat u = (e2.l - e1.l).cross(d1) / denom;
      if (sgn(u) < 0 || u > 1) continue;
      xs.push_back(e1.l.x + t * d1.x);
    }
  }
}

struct SweepResult {
  std::vector<Rat> slab_xs;                 // sorted unique
  std::vector<std::vector<Trap>> by_slab;   // kept trapezoids, bottom-to-top
};

SweepResult sweep(const std::vector<SEdge>& edges,
                  const std::function<bool(int, int)>& keep) {
  SweepResult res;
  if (edges.empty()) return res;
  std::vector<Rat> xs;
  for (const auto& e : edges) {
    xs.push_back(e.l.x);
    xs.push_back(e.r.x);
  }
  crossing_xs(edges, xs);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  res.slab_xs = xs;
  if (xs.size() < 2) return res;
  res.by_slab.resize(xs.size() - 1);

  // edges sorted by left x for an incremental active set
  std::vector<size_t> order(edges.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return edges[a].l.x < edges[b].l.x;
  });

  size_t next_edge = 0;
  std::vector<size_t> active;
  struct Spanning {
    Rat y0, y1;
    int dwA, dwB;
  };
  std::vector<Spanning> span;
  for (size_t s = 0; s + 1 < xs.size(); ++s) {
    const Rat& x0 = xs[s];
    const Rat& x1 = xs[s + 1];
    while (next_edge < order.size() && edges[order[next_edge]].l.x <= x0)
      active.push_back(order[next_edge++]);
    // drop finished edges
    active.erase(std::remove_if(active.begin(), active.end(),
                                [&](size_t i) { return edges[i].r.x <= x0; }),
                 active.end());
    span.clear();
    for (size_t i : active) {
      const SEdge& e = edges[i];
      if (e.l.x <= x0 && e.r.x >= x1)
        span.push_back({e.y_at(x0), e.y_at(x1), e.dw[0], e.dw[1]});
    }
    if (span.empty()) continue;
    std::sort(span.begin(), span.end(), [](const Spanning& a, const Spanning& b) {
      if (a.y0 != b.y0) return a.y0 < b.y0;
      return a.y1 < b.y1;
    });
    int covA = 0, covB = 0;
    for (size_t i = 0; i + 1 <= span.size(); ++i) {
      covA += span[i].dwA;
      covB += span[i].dwB;
      if (i + 1 == span.size()) break;
      if (!keep(covA, covB)) continue;
      const Spanning& lo = span[i];
      const Spanning& hi = span[i + 1];
      if (lo.y0 == hi.y0 && lo.y1 == hi.y1) continue;  // zero area
      res.by_slab[s].push_back(Trap{x0, x1, lo.y0, lo.y1, hi.y0, hi.y1});
    }
  }
  return res;
}

// ---- boundary stitching ----------------------------------------------------

struct PointLess {
  bool operator()(const Point2& a, const Point2& b) const { return lex_less(a, b); }
};

// clockwise-from-ref ordering of directions; exactly-backward sorts last
bool cw_less(const Vec2& ref, const Vec2& u1, const Vec2& u2) {
  auto klass = [&](const Vec2& u) {
    Rat cr = ref.cross(u);
    Rat dt = ref.dot(u);
    if (sgn(cr) == 0) return sgn(dt) > 0 ? 4 : 2;  // forward(=backtrack) last, opposite mid
    return sgn(cr) < 0 ? 1 : 3;  // right side first, then left side
  };
  int k1 = klass(u1), k2 = klass(u2);
  if (k1 != k2) return k1 < k2;
  if (k1 == 1 || k1 == 3) return sgn(u1.cross(u2)) < 0;
  return false;
}

struct DirEdge {
  Point2 a, b;
};

std::vector<Ring> stitch(const SweepResult& sw) {
  std::vector<DirEdge> edges;
  // horizontal-ish edges: suppress coincident bottom/top between stacked traps
  for (size_t s = 0; s < sw.by_slab.size(); ++s) {
    const auto& traps = sw.by_slab[s];
    for (size_t i = 0; i < traps.size(); ++i) {
      const Trap& t = traps[i];
      bool bottom_internal =
          i > 0 && traps[i - 1].yhi0 == t.ylo0 && traps[i - 1].yhi1 == t.ylo1;
      bool top_internal = i + 1 < traps.size() && traps[i + 1].ylo0 == t.yhi0 &&
                          traps[i + 1].ylo1 == t.yhi1;
      if (!bottom_internal)
        edges.push_back({{t.x0, t.ylo0}, {t.x1, t.ylo1}});
      if (!top_internal)
        edges.push_back({{t.x1, t.yhi1}, {t.x0, t.yhi0}});
    }
  }
  // vertical edges at slab boundaries: net of right sides (up) and left sides (down)
  for (size_t xi = 0; xi < sw.slab_xs.size(); ++xi) {
    const Rat& x = sw.slab_xs[xi];
    // (y_interval, delta): +1 from slab xi-1 right sides, -1 from slab xi left sides
    std::vector<std::pair<Rat, int>> events;
    if (xi > 0)
      for (const Trap& t : sw.by_slab[xi - 1]) {
        if (t.ylo1 == t.yhi1) continue;
        events.push_back({t.ylo1, +1});
        events.push_back({t.yhi1, -1});
      }
    if (xi < sw.by_slab.size())
      for (const Trap& t : sw.by_slab[xi]) {
        if (t.ylo0 == t.yhi0) continue;
        events.push_back({t.ylo0, -1});
        events.push_back({t.yhi0, +1});
      }
    if (events.empty()) continue;
    std::sort(events.begin(), events.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    int net = 0;
    for (size_t i = 0; i + 1 < events.size(); ++i) {
      net += events[i].second;
      const Rat& ylo = events[i].first;
      const Rat& yhi = events[i + 1].first;
      if (ylo == yhi) continue;
      if (net > 0)
        edges.push_back({{x, ylo}, {x, yhi}});
      else if (net < 0)
        edges.push_back({{x, yhi}, {x, ylo}});
    }
  }

  // stitch directed edges into simple loops (cw-most turn at branch vertices)
  std::sort(edges.begin(), edges.end(), [](const DirEdge& a, const DirEdge& b) {
    if (a.a != b.a) return lex_less(a.a, b.a);
    return lex_less(a.b, b.b);
  });
  std::map<Point2, std::vector<size_t>, PointLess> outgoing;
  for (size_t i = 0; i < edges.size(); ++i) outgoing[edges[i].a].push_back(i);
  std::vector<bool> used(edges.size(), false);

  std::vector<Ring> rings;
  for (size_t start = 0; start < edges.size(); ++start) {
    if (used[start]) continue;
    std::vector<Point2> loop;
    size_t cur = start;
    while (true) {
      used[cur] = true;
      loop.push_back(edges[cur].a);
      const Point2& v = edges[cur].b;
      if (v == edges[start].a) break;
      Vec2 back = edges[cur].a - v;  // reverse of incoming
      auto it = outgoing.find(v);
      if (it == outgoing.end()) throw MalformedRegion("open boundary chain");
      size_t best = SIZE_MAX;
      for (size_t cand : it->second) {
        if (used[cand]) continue;
        if (best == SIZE_MAX) {
          best = cand;
          continue;
        }
        Vec2 u1 = edges[cand].b - v, u2 = edges[best].b - v;
        if (cw_less(back, u1, u2)) best = cand;
      }
      if (best == SIZE_MAX) throw MalformedRegion("open boundary chain");
      cur = best;
    }
    // drop collinear middles
    std::vector<Point2> clean;
    const size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
      const Point2& prev = loop[(i + n - 1) % n];
      const Point2& curp = loop[i];
      const Point2& next = loop[(i + 1) % n];
      if (orient(prev, curp, next) == 0) continue;
      clean.push_back(curp);
    }
    if (clean.size() < 3) continue;
    Rat twice(0);
    for (size_t i = 0; i < clean.size(); ++i)
      twice += clean[i].cross(clean[(i + 1) % clean.size()]);
    if (sgn(twice) == 0) continue;
    Ring ring;
    ring.hole = sgn(twice) < 0;
    if (ring.hole) std::reverse(clean.begin(), clean.end());
    ring.pts = std::move(clean);
    rings.push_back(std::move(ring));
  }
  Region tmp;
  tmp.rings = std::move(rings);
  canonical_order(tmp);
  return std::move(tmp.rings);
}

std::function<bool(int, int)> predicate(BoolOp op) {
  switch (op) {
    case BoolOp::Union:
      return [](int a, int b) { return a >= 1 || b >= 1; };
    case BoolOp::Intersect:
      return [](int a, int b) { return a >= 1 && b >= 1; };
    case BoolOp::Difference:
      return [](int a, int b) { return a >= 1 && b < 1; };
    case BoolOp::Xor:
      return [](int a, int b) { return (a >= 1) != (b >= 1); };
  }
  throw BadParams("bad boolean op");
}

void validate_rings(const Region& r) {
  for (const auto& ring : r.rings) {
    if (ring.pts.size() < 3) throw MalformedRegion("ring with < 3 vertices");
    Rat twice(0);
    for (size_t i = 0; i < ring.pts.size(); ++i)
      twice += ring.pts[i].cross(ring.pts[(i + 1) % ring.pts.size()]);
    if (sgn(twice) <= 0) throw MalformedRegion("ring not ccw-positive");
  }
}

Region material_only(const Region& r) {
  Region m;
  m.rings = r.rings;
  return m;
}

std::vector<Point2> finish_markers(std::vector<Point2> markers, const Region& material) {
  std::vector<Point2> out;
  for (auto& m : markers)
    if (!region_contains_closed(material, m)) out.push_back(std::move(m));
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Region boolean_op(BoolOp op, const Region& a, const Region& b) {
  validate_rings(a);
  validate_rings(b);
  std::vector<SEdge> edges;
  collect_edges(a, 0, edges);
  collect_edges(b, 1, edges);
  SweepResult sw = sweep(edges, predicate(op));
  Region out;
  out.rings = stitch(sw);

  // markers: membership is closed; covered markers are redundant and dropped
  std::vector<Point2> cand;
  const Region am = material_only(a), bm = material_only(b);
  auto in_a = [&](const Point2& p) { return region_contains_closed(a, p); };
  auto in_b = [&](const Point2& p) { return region_contains_closed(b, p); };
  switch (op) {
    case BoolOp::Union:
      cand = a.markers;
      cand.insert(cand.end(), b.markers.begin(), b.markers.end());
      break;
    case BoolOp::Intersect:
      for (const auto& m : a.markers)
        if (in_b(m)) cand.push_back(m);
      for (const auto& m : b.markers)
        if (in_a(m)) cand.push_back(m);
      break;
    case BoolOp::Difference:
      for (const auto& m : a.markers)
        if (!in_b(m)) cand.push_back(m);
      break;
    case BoolOp::Xor:
      for (const auto& m : a.markers)
        if (!in_b(m)) cand.push_back(m);
      for (const auto& m : b.markers)
        if (!in_a(m)) cand.push_back(m);
      break;
  }
  out.markers = finish_markers(std::move(cand), out);
  return out;
}

Region canonicalize(const Region& r) {
  validate_rings(r);
  for (const auto& ring : r.rings)
    if (!region_from_ring(ring.pts).has_material())
      throw MalformedRegion("ring failed validation");
  std::vector<SEdge> edges;
  collect_edges(r, 0, edges);
  SweepResult sw = sweep(edges, [](int a, int) { return a >= 1; });
  Region out;
  out.rings = stitch(sw);
  out.markers = finish_markers(r.markers, out);
  return out;
}

std::vector<ConvexPolygon> convex_pieces(const Region& r) {
  std::vector<SEdge> edges;
  collect_edges(r, 0, edges);
  SweepResult sw = sweep(edges, [](int a, int) { return a >= 1; });
  std::vector<ConvexPolygon> pieces;
  for (const auto& slab : sw.by_slab) {
    for (const Trap& t : slab) {
      std::vector<Point2> pts;
      pts.push_back({t.x0, t.ylo0});
      pts.push_back({t.x1, t.ylo1});
      pts.push_back({t.x1, t.yhi1});
      pts.push_back({t.x0, t.yhi0});
      std::vector<Point2> dedup;
      for (auto& p : pts)
        if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(std::move(p));
      while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
      if (dedup.size() < 3) continue;
      if (sgn(t.area()) <= 0) continue;
      pieces.push_back(make_convex(std::move(dedup)));
    }
  }
  return pieces;
}

Region union_convex(std::span<const ConvexPolygon> pieces,
                    std::span<const Point2> markers) {
  Region in;
  for (const auto& p : pieces) in.rings.push_back(Ring{p.v, false});
  for (const auto& m : markers) in.markers.push_back(m);
  std::vector<SEdge> edges;
  collect_edges(in, 0, edges);
  SweepResult sw = sweep(edges, [](int a, int) { return a >= 1; });
  Region out;
  out.rings = stitch(sw);
  out.markers = finish_markers(in.markers, out);
  return out;
}

Rat area_boolean(BoolOp op, const Region& a, const Region& b) {
  std::vector<SEdge> edges;
  collect_edges(a, 0, edges);
  collect_edges(b, 1, edges);
  SweepResult sw = sweep(edges, predicate(op));
  Rat total(0);
  for (const auto& slab : sw.by_slab)
    for (const Trap& t : slab) total += t.area();
  return total;
}

Rat area_exact(const Region& r) {
  std::vector<SEdge> edges;
  collect_edges(r, 0, edges);
  SweepResult sw = sweep(edges, [](int a, int) { return a >= 1; });
  Rat total(0);
  for (const auto& slab : sw.by_slab)
    for (const Trap& t : slab) total += t.area();
  return total;
}

}  // namespace bmlab
