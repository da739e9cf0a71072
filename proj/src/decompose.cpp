#include "bmlab/decompose.hpp"

#include <algorithm>
#include <map>

#include "bmlab/trig.hpp"

namespace bmlab {

namespace {

Rat dist2_point_segment(const Point2& p, const Segment& s) {
  Vec2 d = s.dir();
  Rat dd = d.norm2();
  if (sgn(dd) == 0) return dist2(p, s.a);
  Rat tt = (p - s.a).dot(d) / dd;
  if (sgn(tt) < 0) tt = 0;
  if (tt > 1) tt = 1;
  return dist2(p, s.a + d * tt);
}

// sign of A - B sqrt(w) for integers A, B and integer w >= 0
int cmp_int_sqrt(const Int& a, const Int& b, const Int& w) {
  const int sa = mpz_sgn(a.get_mpz_t());
  if (mpz_sgn(b.get_mpz_t()) == 0 || mpz_sgn(w.get_mpz_t()) == 0) return sa;
  const int sb = mpz_sgn(b.get_mpz_t());
  if (sa == 0) return -sb;
  if (sa != sb) return sa;
  Int lhs = a * a, rhs = b * b * w;
  int c = mpz_cmp(lhs.get_mpz_t(), rhs.get_mpz_t());
  if (c == 0) return 0;
  return sa > 0 ? (c > 0 ? 1 : -1) : (c > 0 ? -1 : 1);
}

// exact certified angle comparisons via rational cosine brackets; clearing
// denominators keeps everything in integer arithmetic (no mpq gcd churn)
int cmp_cos_vs(const Vec2& u, const Vec2& v, const Rat& c) {
  Int ux = u.x.get_num() * u.y.get_den();
  Int uy = u.y.get_num() * u.x.get_den();
  Int vx = v.x.get_num() * v.y.get_den();
  Int vy = v.y.get_num() * v.x.get_den();
  Int d = ux * vx + uy * vy;
  Int w = (ux * ux + uy * uy) * (vx * vx + vy * vy);
  // sign of d*den(c) - num(c) sqrt(w)
  Int lhs = d * c.get_den();
  return cmp_int_sqrt(lhs, Int(c.get_num()), w);
}

}  // namespace

bool angle_at_most(const Vec2& u, const Vec2& v, const Rat& bound_deg) {
  if (bound_deg >= 180) return true;
  Rat c_hi = cos_deg(bound_deg, 128).hi;
  return cmp_cos_vs(u, v, c_hi) >= 0;  // cos >= cos(bound) certified
}

bool angle_at_least(const Vec2& u, const Vec2& v, const Rat& bound_deg) {
  if (sgn(bound_deg) <= 0) return true;
  Rat c_lo = cos_deg(bound_deg, 128).lo;
  return cmp_cos_vs(u, v, c_lo) <= 0;  // cos <= cos(bound) certified
}

Vec2 grid_unit(long index, long M) {
  // index counts alpha/2 = 360/M degree steps: M distinct directions total
  const long half_units = M;
  long k = ((index % half_units) + half_units) % half_units;
  static std::map<std::pair<long, long>, Vec2> cache;
  auto it = cache.find({k, M});
  if (it != cache.end()) return it->second;
  Rat angle_deg = rat(360 * k, half_units);  // k * alpha/2 with alpha=720/M
  Vec2 u;
  if (angle_deg == 0) {
    u = {rat(1), rat(0)};
  } else if (angle_deg == 180) {
    u = {rat(-1), rat(0)};
  } else {
    bool lower = angle_deg > 180;
    Rat a = lower ? Rat(360) - angle_deg : angle_deg;
    // tau approximates tan(a/2) within the 44-bit bracket; any rational tau
    // yields an exact unit vector, so take the simplest one in the bracket
    RatInterval tb = tan_deg(a / 2, 30);
    Rat tau = simplest_in(tb.lo, tb.hi);
    Rat denom = 1 + tau * tau;
    u = {(1 - tau * tau) / denom, 2 * tau / denom};
    if (lower) u.y = -u.y;
  }
  cache[{k, M}] = u;
  return u;
}

bool is_bisecting(const Point2& p, const ConvexPolygon& c, const Rat& theta_deg,
                  const Rat& ell) {
  if (!c.contains_strict(Point2{rat(0), rat(0)})) throw OriginOutside();
  if (!c.on_boundary(p)) throw NotOnBoundary();
  if (sgn(theta_deg) <= 0 || theta_deg >= 180 || sgn(ell) <= 0)
    throw BadParams("bad bisecting parameters");
  Vec2 w = -p;  // p -> o
  Rat w2 = w.norm2();
  if (sgn(w2) == 0) throw BadParams("boundary point at the origin");
  // apex half-angle via exact rational rotation R(tau), tau >= tan(theta/4);
  // arm length mu |op| with mu >= ell/|op| (surrogate contains the ideal
  // triangle; true answer certifies the ideal containment)
  RatInterval tb = tan_deg(theta_deg / 4, 48);
  Rat tau = simplest_in(tb.hi, tb.hi + tb.width());
  Rat mu = sqrt_upper_simple(ell * ell / w2, 48);
  Rat denom = 1 + tau * tau;
  Rat cos_r = (1 - tau * tau) / denom, sin_r = 2 * tau / denom;
  Vec2 arm_plus{cos_r * w.x - sin_r * w.y, sin_r * w.x + cos_r * w.y};
  Vec2 arm_minus{cos_r * w.x + sin_r * w.y, -sin_r * w.x + cos_r * w.y};
  Point2 e_plus = p + arm_plus * mu;
  Point2 e_minus = p + arm_minus * mu;
  return c.contains(e_plus) && c.contains(e_minus);
}

bool is_good_point(const Point2& p, const ConvexPolygon& c, const Rat& theta_deg,
                   const Rat& ell) {
  if (!c.on_boundary(p)) throw NotOnBoundary();
  const Rat l2 = ell * ell;
  std::vector<Point2> cand;
  for (const auto& v : c.v)
    if (dist2(p, v) >= l2) cand.push_back(v);
  // circle-boundary crossings, bracketed inward (distance >= ell certified)
  for (size_t i = 0; i < c.size(); ++i) {
    Segment e = c.edge(i);
    Rat da = dist2(p, e.a), db = dist2(p, e.b);
    auto bisect = [&](Rat lo_t, Rat hi_t) {
      // dist2 at lo < l2 <= dist2 at hi; returns param with dist2 >= l2,
      // snapped to the simplest rational that still verifies
      for (int it = 0; it < 60; ++it) {
        Rat mid = (lo_t + hi_t) / 2;
        if (dist2(p, e.a + e.dir() * mid) >= l2)
          hi_t = mid;
        else
          lo_t = mid;
      }
      Rat lo_s = std::min(lo_t, hi_t), hi_s = std::max(lo_t, hi_t);
      Rat snap = simplest_in(lo_s, hi_s);
      if (dist2(p, e.a + e.dir() * snap) >= l2) return snap;
      return hi_t;
    };
    if (da < l2 && db >= l2) cand.push_back(e.a + e.dir() * bisect(Rat(0), Rat(1)));
    if (db < l2 && da >= l2) cand.push_back(e.a + e.dir() * bisect(Rat(1), Rat(0)));
  }
  if (cand.size() < 2) return false;
  const Rat c_lo = cos_deg(Rat(180) - theta_deg, 128).lo;
  for (size_t i = 0; i < cand.size(); ++i)
    for (size_t j = i + 1; j < cand.size(); ++j) {
      Vec2 u = cand[i] - p, v = cand[j] - p;
      if (sgn(u.norm2()) == 0 || sgn(v.norm2()) == 0) continue;
      if (cmp_cos_vs(u, v, c_lo) <= 0) return true;  // angle >= 180 - theta
    }
  return false;
}

// ---------------------------------------------------------------------------
// boundary walk machinery

namespace {

struct Walk {
  const std::vector<TaggedEdge>* edges;
  size_t E;

  Rat norm(Rat key) const {
    Rat e(static_cast<long>(E));
    while (key < 0) key += e;
    while (key >= e) key -= e;
    return key;
  }

  Point2 at(const Rat& key0) const {
    Rat key = norm(key0);
    // edge index = floor(key)
    Int idx;
    mpz_fdiv_q(idx.get_mpz_t(), key.get_num().get_mpz_t(), key.get_den().get_mpz_t());
    size_t e = static_cast<size_t>(idx.get_ui());
    if (e >= E) e = E - 1;
    Rat t = key - Rat(static_cast<long>(e));
    const TaggedEdge& te = (*edges)[e];
    return te.a + (te.b - te.a) * t;
  }

  // cyclic forward distance in key units
  Rat fwd(const Rat& from, const Rat& to) const {
    Rat d = norm(to) - norm(from);
    if (sgn(d) < 0) d += Rat(static_cast<long>(E));
    return d;
  }
};

struct BadRunArc {
  std::vector<Segment> segs;  // polyline of the bad arc

  Rat dist2_to(const Point2& p) const {
    Rat best = dist2_point_segment(p, segs[0]);
    for (size_t i = 1; i < segs.size(); ++i)
      best = std::min(best, dist2_point_segment(p, segs[i]));
    return best;
  }
};

// polyline of the walk between two keys (forward)
std::vector<Segment> walk_polyline(const Walk& w, const Rat& lo, const Rat& hi) {
  std::vector<Segment> out;
  Rat span = w.fwd(lo, hi);
  if (sgn(span) == 0) span = Rat(static_cast<long>(w.E));  // full circle
  Rat covered(0);
  Rat cur = w.norm(lo);
  while (covered < span) {
    // next integer key after cur
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), cur.get_num().get_mpz_t(), cur.get_den().get_mpz_t());
    Rat next_int = Rat(fl) + 1;
    Rat step = next_int - cur;
    Rat remaining = span - covered;
    if (step > remaining) step = remaining;
    Rat nxt = w.norm(cur + step);
    Point2 a = w.at(cur), b = w.at(cur + step);
    if (!(a == b)) out.push_back({a, b});
    covered += step;
    cur = nxt;
  }
  return out;
}

struct IntervalSet {
  // merged, sorted by lo; an interval with hi < lo wraps through the origin
  std::vector<WalkInterval> items;
  Rat domain;  // E

  bool contains(const Rat& key) const {
    for (const auto& it : items) {
      if (it.lo <= it.hi) {
        if (key >= it.lo && key <= it.hi) return true;
      } else {
        if (key >= it.lo || key <= it.hi) return true;
      }
    }
    return false;
  }
};

IntervalSet merge_intervals(std::vector<WalkInterval> raw, const Rat& domain) {
  IntervalSet out;
  out.domain = domain;
  if (raw.empty()) return out;
  // unroll wrap intervals into [lo, hi+domain] on a doubled axis
  struct Lin {
    Rat lo, hi;
  };
  std::vector<Lin> lin;
  for (auto& iv : raw) {
    if (iv.lo <= iv.hi)
      lin.push_back({iv.lo, iv.hi});
    else
      lin.push_back({iv.lo, iv.hi + domain});
  }
  std::sort(lin.begin(), lin.end(), [](const Lin& a, const Lin& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
  std::vector<Lin> merged;
  for (const auto& l : lin) {
    if (!merged.empty() && l.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, l.hi);
    } else {
      merged.push_back(l);
    }
  }
  // re-wrap: the last interval may reach past `domain` and swallow front ones
  if (!merged.empty() && merged.back().hi >= domain) {
    bool changed = true;
    while (changed && merged.size() > 1) {
      changed = false;
      Rat wrapped_hi = merged.back().hi - domain;
      if (merged.front().hi <= wrapped_hi) {
        merged.erase(merged.begin());
        changed = true;
      } else if (merged.front().lo <= wrapped_hi) {
        merged.back().hi = merged.front().hi + domain;
        merged.erase(merged.begin());
        changed = true;
      }
    }
  }
  for (const auto& l : merged) {
    if (l.hi - l.lo >= domain) {
      out.items.clear();
      out.items.push_back({Rat(0), domain});  // full circle
      return out;
    }
    if (l.hi >= domain)
      out.items.push_back({l.lo, l.hi - domain});
    else
      out.items.push_back({l.lo, l.hi});
  }
  return out;
}

}  // namespace

bool LevelPartition::contains_bad(const Rat& key) const {
  if (all_bad) return true;
  for (const auto& it : bad) {
    if (it.lo <= it.hi) {
      if (key >= it.lo && key <= it.hi) return true;
    } else {
      if (key >= it.lo || key <= it.hi) return true;
    }
  }
  return false;
}

BoundaryClassification classify_boundary(const NormalizedScene& scene,
                                         const Rat& theta_deg, const Rat& ell,
                                         const Rat& t, long M) {
  const auto& edges = scene.dt_tagged.edges;
  Walk w{&edges, edges.size()};
  const Rat domain(static_cast<long>(w.E));
  BoundaryClassification out;
  out.s_values = {2 * ell, 3 * ell, rat(100) / t * ell};

  // chord walk start: lexicographically smallest vertex of co(D_t)
  Rat start_key(-1);
  for (size_t e = 0; e < w.E; ++e)
    if (edges[e].a == scene.coDt.v[0]) {
      start_key = Rat(static_cast<long>(e));
      break;
    }
  if (sgn(start_key) < 0) throw DegenerateScene("walk origin not found");

  const Rat l2 = ell * ell;
  // one chord step: first boundary point (key) at chord distance >= ell
  auto chord_step = [&](const Rat& from) -> std::optional<Rat> {
    Point2 p0 = w.at(from);
    Rat lo = from;
    Rat advanced(0);
    for (size_t guard = 0; guard <= w.E; ++guard) {
      // end of current edge
      Int fl;
      Rat cur = w.norm(lo);
      mpz_fdiv_q(fl.get_mpz_t(), cur.get_num().get_mpz_t(), cur.get_den().get_mpz_t());
      Rat edge_end = Rat(fl) + 1;
      Rat hi = lo + (edge_end - cur);
      if (dist2(w.at(hi), p0) >= l2) {
        // crossing within (lo, hi]; snap to a simple key that still verifies
        Rat a = lo, b = hi;
        for (int it = 0; it < 48; ++it) {
          Rat mid = (a + b) / 2;
          if (dist2(w.at(mid), p0) >= l2)
            b = mid;
          else
            a = mid;
        }
        Rat snap = simplest_in(a, b);
        if (dist2(w.at(snap), p0) >= l2) return w.norm(snap);
        return w.norm(b);
      }
      advanced += hi - lo;
      if (advanced > domain) return std::nullopt;  // perimeter < ell
      lo = hi;
    }
    return std::nullopt;
  };

  // inscribed polygon
  std::vector<Rat> keys;
  keys.push_back(w.norm(start_key));
  Rat traveled(0);
  for (long guard = 0; guard < 200000; ++guard) {
    auto nxt = chord_step(keys.back());
    if (!nxt) throw DegenerateScene("perimeter below chord length");
    Rat adv = w.fwd(keys.back(), *nxt);
    if (traveled + adv >= domain) break;  // would pass the origin: close up
    traveled += adv;
    keys.push_back(*nxt);
  }
  if (keys.size() < 3) throw DegenerateScene("fewer than 3 inscribed vertices");
  out.inscribed_keys = keys;
  for (const auto& k : keys) out.inscribed.push_back(w.at(k));

  // S_good rule: side i good iff sides i-1, i, i+1 all full-length and the two
  // interior angles at its endpoints are >= 180 - theta/2 (certified)
  const size_t m = keys.size();
  const size_t closing = m - 1;  // side m-1 joins last to first, may be short
  const Rat c_lo = cos_deg(Rat(180) - theta_deg / 2, 128).lo;
  auto angle_ok = [&](size_t vtx) {
    const Point2& prev = out.inscribed[(vtx + m - 1) % m];
    const Point2& cur = out.inscribed[vtx];
    const Point2& next = out.inscribed[(vtx + 1) % m];
    Vec2 u = prev - cur, v = next - cur;
    return cmp_cos_vs(u, v, c_lo) <= 0;  // cos <= cos(180-theta/2)
  };
  out.side_good.resize(m);
  for (size_t i = 0; i < m; ++i) {
    bool full = i != closing && (i + m - 1) % m != closing && (i + 1) % m != closing;
    out.side_good[i] = full && angle_ok(i) && angle_ok((i + 1) % m) ? 1 : 0;
  }

  // maximal bad runs as walk intervals
  std::vector<WalkInterval> bad_runs;
  {
    std::vector<char> is_bad(m);
    bool any_good = false;
    for (size_t i = 0; i < m; ++i) {
      is_bad[i] = !out.side_good[i];
      any_good |= !is_bad[i];
    }
    if (!any_good) {
      bad_runs.push_back({Rat(0), domain});
    } else {
      for (size_t i = 0; i < m; ++i) {
        if (!is_bad[i] || is_bad[(i + m - 1) % m]) continue;  // not a run start
        size_t j = i;
        while (is_bad[(j + 1) % m]) j = (j + 1) % m;
        bad_runs.push_back({keys[i], keys[(j + 1) % m]});
      }
    }
  }

  // per level: bad neighborhoods, merged; then good-arc subdivision
  const Rat alpha3 = rat(720, M) / 3;
  for (int level = 0; level < 3; ++level) {
    const Rat s = out.s_values[level];
    const Rat s2 = s * s;
    std::vector<WalkInterval> expanded;
    bool full_circle = false;
    for (const auto& run : bad_runs) {
      if (run.lo == 0 && run.hi == domain) {
        full_circle = true;
        break;
      }
      BadRunArc arc{walk_polyline(w, run.lo, run.hi)};
      // extend forward from run.hi
      auto extend = [&](const Rat& from, int dir) -> Rat {
        Rat cur = from;
        Rat total(0);
        while (total < domain) {
          // step to next integer key in direction dir
          Rat curn = w.norm(cur);
          Int fl;
          mpz_fdiv_q(fl.get_mpz_t(), curn.get_num().get_mpz_t(),
                     curn.get_den().get_mpz_t());
          Rat boundary = dir > 0 ? Rat(fl) + 1 : Rat(fl);
          if (boundary == curn) boundary += Rat(dir);
          Rat step = rat_abs(boundary - curn);
          Rat nxt = cur + Rat(dir) * step;
          // probe endpoint and midpoint
          bool out_end = arc.dist2_to(w.at(nxt)) > s2;
          bool out_mid = arc.dist2_to(w.at((cur + nxt) / 2)) > s2;
          if (out_end && out_mid) {
            // bisect the crossing inside (cur, nxt); outward-conservative
            Rat a = cur, b = nxt;
            for (int it = 0; it < 40; ++it) {
              Rat mid = (a + b) / 2;
              if (arc.dist2_to(w.at(mid)) > s2)
                b = mid;
              else
                a = mid;
            }
            Rat lo_s = std::min(a, b), hi_s = std::max(a, b);
            Rat snap = simplest_in(lo_s, hi_s);
            if (arc.dist2_to(w.at(snap)) > s2) return w.norm(snap);
            return w.norm(b);
          }
          total += step;
          cur = nxt;
        }
        return w.norm(from);  // wrapped all the way
      };
      Rat hi_ext = extend(run.hi, +1);
      Rat lo_ext = extend(run.lo, -1);
      if (w.fwd(lo_ext, hi_ext) < w.fwd(run.lo, run.hi)) {
        full_circle = true;  // extensions wrapped around
        break;
      }
      expanded.push_back({lo_ext, hi_ext});
    }
    LevelPartition part;
    if (full_circle) {
      part.all_bad = true;
      part.bad.push_back({Rat(0), domain});
    } else {
      IntervalSet merged = merge_intervals(expanded, domain);
      if (merged.items.size() == 1 && merged.items[0].lo == 0 &&
          merged.items[0].hi == domain)
        part.all_bad = true;
      part.bad = merged.items;
    }

    // subdivide good arcs into certified angular width <= alpha/3; pieces are
    // first split at tagged-edge boundaries (each edge subtends < 180 deg from
    // the interior origin, so the cosine certificate is unambiguous there)
    if (!part.all_bad) {
      std::vector<WalkInterval> good;
      if (part.bad.empty()) {
        good.push_back({Rat(0), domain});
      } else {
        for (size_t i = 0; i < part.bad.size(); ++i) {
          const Rat& from = part.bad[i].hi;
          const Rat& to = part.bad[(i + 1) % part.bad.size()].lo;
          if (w.norm(from) != w.norm(to)) good.push_back({from, to});
        }
      }
      for (const auto& g : good) {
        Rat span = w.fwd(g.lo, g.hi);
        if (sgn(span) == 0) span = domain;
        Rat cur(0);
        while (cur < span) {
          // advance cap: stay within the current tagged edge
          Rat curn = w.norm(g.lo + cur);
          Int fl;
          mpz_fdiv_q(fl.get_mpz_t(), curn.get_num().get_mpz_t(),
                     curn.get_den().get_mpz_t());
          Rat edge_cap = Rat(fl) + 1 - curn;
          Rat rest = span - cur;
          Rat max_adv = std::min(edge_cap, rest);
          Point2 anchor = w.at(g.lo + cur);
          Rat adv;
          if (angle_at_most(anchor, w.at(g.lo + cur + max_adv), alpha3)) {
            adv = max_adv;
          } else {
            Rat lo_adv(0), hi_adv = max_adv;
            for (int it = 0; it < 24; ++it) {
              Rat mid = (lo_adv + hi_adv) / 2;
              if (angle_at_most(anchor, w.at(g.lo + cur + mid), alpha3))
                lo_adv = mid;
              else
                hi_adv = mid;
            }
            if (sgn(lo_adv) == 0)
              throw DegenerateScene("angular subdivision stalled");
            Rat snap = simplest_in(lo_adv, hi_adv);
            if (snap > lo_adv && snap < hi_adv &&
                angle_at_most(anchor, w.at(g.lo + cur + snap), alpha3))
              adv = snap;
            else
              adv = lo_adv;
          }
          cur += adv;
          if (cur < span) part.good_subdivision.push_back(w.norm(g.lo + cur));
        }
      }
    }
    out.levels[level] = std::move(part);
  }
  return out;
}

std::vector<JSegment> refine_to_j(const NormalizedScene& scene,
                                  const BoundaryClassification& cls, const Rat& xi,
                                  long M) {
  (void)M;
  if (sgn(scene.gamma) == 0) return {};
  const auto& edges = scene.dt_tagged.edges;
  Walk w{&edges, edges.size()};
  const Rat domain(static_cast<long>(w.E));

  std::vector<Rat> keys;
  for (size_t e = 0; e < w.E; ++e) keys.push_back(Rat(static_cast<long>(e)));
  for (const auto& part : cls.levels) {
    for (const auto& iv : part.bad) {
      keys.push_back(w.norm(iv.lo));
      keys.push_back(w.norm(iv.hi));
    }
    for (const auto& k : part.good_subdivision) keys.push_back(w.norm(k));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  const Rat cap2 = xi * xi * scene.gamma;
  std::vector<JSegment> segs;
  for (size_t i = 0; i < keys.size(); ++i) {
    const Rat& lo = keys[i];
    Rat hi = i + 1 < keys.size() ? keys[i + 1] : domain;
    if (!(lo < hi)) continue;
    Point2 pa = w.at(lo), pb = w.at(hi == domain ? Rat(0) : hi);
    Rat len2 = dist2(pa, pb);
    if (sgn(len2) == 0) continue;
    // smallest n with len2 / n^2 <= cap2
    Rat ratio = len2 / cap2;
    Int fl_ratio;
    mpz_fdiv_q(fl_ratio.get_mpz_t(), ratio.get_num().get_mpz_t(),
               ratio.get_den().get_mpz_t());
    long n = isqrt(fl_ratio).get_si();
    if (n < 1) n = 1;
    while (Rat(n) * Rat(n) * cap2 < len2) ++n;
    for (long part = 0; part < n; ++part) {
      JSegment s;
      s.key_lo = lo + (hi - lo) * rat(part, n);
      s.key_hi = lo + (hi - lo) * rat(part + 1, n);
      s.a = w.at(s.key_lo);
      s.b = w.at(s.key_hi == domain ? Rat(0) : s.key_hi);
      Rat midkey = (s.key_lo + s.key_hi) / 2;
      Rat keyn = w.norm(s.key_lo);
      Int fl;
      mpz_fdiv_q(fl.get_mpz_t(), keyn.get_num().get_mpz_t(), keyn.get_den().get_mpz_t());
      s.dt_edge = static_cast<size_t>(fl.get_ui());
      for (int level = 0; level < 3; ++level)
        s.good[level] = !cls.levels[level].contains_bad(w.norm(midkey));
      segs.push_back(std::move(s));
    }
  }
  return segs;
}

void assign_directions(std::vector<JSegment>& segs, const NormalizedScene& scene,
                       const Rat& xi, long M, CoverMode mode,
                       ParallelogramCover* stats_out) {
  if (segs.empty()) return;
  const auto& edges = scene.dt_tagged.edges;
  Walk w{&edges, edges.size()};
  const Rat alpha3 = rat(720, M) / 3;

  // host arcs at the 100 t^-1 l level: contiguous runs with the same label,
  // split further by the good-subdivision keys recorded in the classification
  // (good chunks are already <= alpha/3); here we only need run boundaries,
  // which are exactly the places where segs[i].good[2] or the direction block
  // subdivision changes. Walk segments in order and build blocks.
  const size_t n = segs.size();
  // rotate start to a block boundary: first segment whose good[2] differs from
  // the previous one, if any; otherwise 0
  size_t start = 0;
  for (size_t i = 0; i < n; ++i) {
    if (segs[i].good[2] != segs[(i + n - 1) % n].good[2]) {
      start = i;
      break;
    }
  }

  long block_id = 0;
  long wide_blocks = 0;
  std::vector<long> block_of(n, -1);
  std::vector<bool> block_wide_flag;
  std::vector<std::pair<size_t, size_t>> block_range;  // [first, last] in walk order

  size_t i = 0;
  while (i < n) {
    size_t idx = (start + i) % n;
    bool label = segs[idx].good[2];
    // extent of this label run
    size_t run_len = 1;
    while (run_len < n && segs[(start + i + run_len) % n].good[2] == label) ++run_len;
    if (label) {
      // good run: chunks stay within one tagged edge (no cosine aliasing) and
      // keep a certified angular width <= alpha/3
      size_t j = 0;
      while (j < run_len) {
        size_t first = (start + i + j) % n;
        size_t k = j;
        Point2 anchor = segs[first].a;
        while (k + 1 < run_len) {
          const JSegment& nxt = segs[(start + i + k + 1) % n];
          if (nxt.dt_edge != segs[first].dt_edge) break;
          if (!angle_at_most(anchor, nxt.b, alpha3)) break;
          ++k;
        }
        for (size_t q = j; q <= k; ++q) block_of[(start + i + q) % n] = block_id;
        block_range.push_back({(start + i + j) % n, (start + i + k) % n});
        block_wide_flag.push_back(false);
        ++block_id;
        j = k + 1;
      }
    } else {
      // bad run: one block if certified narrow; else cascade error or the
      // practical wide-arc fallback with cuts only at good@3l boundaries
      size_t first = (start + i) % n;
      size_t last = (start + i + run_len - 1) % n;
      size_t mid = (start + i + run_len / 2) % n;
      // the midpoint probe guards the cosine test against full-circle aliasing
      bool narrow = angle_at_most(segs[first].a, segs[last].b, alpha3) &&
                    angle_at_most(segs[first].a, segs[mid].a, alpha3);
      if (narrow) {
        for (size_t q = 0; q < run_len; ++q) block_of[(start + i + q) % n] = block_id;
        block_range.push_back({first, last});
        block_wide_flag.push_back(false);
        ++block_id;
      } else if (mode == CoverMode::Cascade) {
        throw ArcTooWide("bad arc wider than alpha/3 in cascade mode");
      } else {
        // chunks close only where the boundary is good at 3l
        size_t j = 0;
        while (j < run_len) {
          size_t cfirst = (start + i + j) % n;
          Point2 anchor = segs[cfirst].a;
          size_t k = j;
          size_t last_good_cut = run_len;  // sentinel: none seen
          while (k + 1 < run_len) {
            const JSegment& nxt = segs[(start + i + k + 1) % n];
            bool fits = angle_at_most(anchor, nxt.b, alpha3);
            if (!fits && segs[(start + i + k) % n].good[1] && k > j) break;
            if (!fits && last_good_cut != run_len) {
              k = last_good_cut;
              break;
            }
            ++k;
            if (segs[(start + i + k) % n].good[1]) last_good_cut = k;
          }
          for (size_t q = j; q <= k; ++q) block_of[(start + i + q) % n] = block_id;
          block_range.push_back({(start + i + j) % n, (start + i + k) % n});
          bool wide =
              !angle_at_most(segs[cfirst].a, segs[(start + i + k) % n].b, alpha3);
          block_wide_flag.push_back(wide);
          if (wide) ++wide_blocks;
          ++block_id;
          j = k + 1;
        }
      }
    }
    i += run_len;
  }

  // cell location on the rational direction grid: cell m <=> direction angle
  // in [m alpha, (m+1) alpha) certified by exact cross tests
  // x lies in cell m iff ccw-after u(m alpha) and strictly ccw-before
  // u((m+1) alpha): the two half-plane tests intersect in exactly that wedge
  const long cells = M / 2;  // alpha-cells around the circle
  auto cell_of = [&](const Vec2& x, long hint) -> long {
    long m = ((hint % cells) + cells) % cells;
    for (long step = 0; step < cells + 2; ++step) {
      Vec2 lo = grid_unit(2 * m, M);
      Vec2 hi = grid_unit(2 * (m + 1), M);
      if (sgn(lo.cross(x)) >= 0 && sgn(hi.cross(x)) < 0 && sgn(lo.dot(x)) > 0)
        return m;
      m = (m + 1) % cells;
    }
    throw DegenerateScene("direction cell not found");
  };

  long hint = 0;
  std::vector<long> block_dir(block_id, 0);
  for (long b = 0; b < block_id; ++b) {
    const auto& range = block_range[b];
    const JSegment& f = segs[range.first];
    const JSegment& l = segs[range.second];
    long ca = cell_of(f.a, hint);
    hint = ca;
    long cb = cell_of(l.b, hint);
    long dir;
    if (ca == cb) {
      dir = 2 * ca + 1;
    } else if ((ca + 1) % cells == cb) {
      dir = (2 * cb) % M;
    } else {
      // wide block: anchor at the middle segment's start
      size_t mid_off = 0;
      size_t count = (range.second + n - range.first) % n + 1;
      mid_off = count / 2;
      const JSegment& midseg = segs[(range.first + mid_off) % n];
      long cm = cell_of(midseg.a, hint);
      dir = 2 * cm + 1;
    }
    block_dir[b] = dir;
  }

  const Rat len_bad = sqrt_upper_simple(rat(225) * scene.gamma, 40);
  const Rat len_good = sqrt_upper_simple(rat(9) * xi * xi * scene.gamma, 40);
  std::vector<long> seen_dirs;
  for (size_t q = 0; q < n; ++q) {
    JSegment& s = segs[q];
    s.block = static_cast<size_t>(block_of[q]);
    s.wide_block = block_wide_flag[s.block];
    s.dir_index = block_dir[s.block];
    Vec2 u = grid_unit(s.dir_index, M);
    Rat mag = s.good[1] ? len_good : len_bad;
    s.v = Vec2{-u.x * mag, -u.y * mag};
    seen_dirs.push_back(s.dir_index);
  }
  std::sort(seen_dirs.begin(), seen_dirs.end());
  seen_dirs.erase(std::unique(seen_dirs.begin(), seen_dirs.end()), seen_dirs.end());
  if (stats_out) {
    stats_out->distinct_directions = static_cast<long>(seen_dirs.size());
    stats_out->wide_blocks = wide_blocks;
  }
}

void erect_parallelograms(std::vector<JSegment>& segs) {
  for (auto& s : segs) {
    Vec2 d = s.b - s.a;
    if (sgn(d.cross(s.v)) <= 0)
      throw DegenerateScene("direction not inward of the boundary edge");
    s.rq = make_convex({s.a, s.b, s.b + s.v, s.a + s.v});
  }
}

void edge_provenance(std::vector<JSegment>& segs, const NormalizedScene& scene) {
  const auto& edges = scene.dt_tagged.edges;
  const Rat& t = scene.t;
  const Rat one_minus_t = Rat(1) - t;
  for (auto& s : segs) {
    if (s.dt_edge >= edges.size()) throw ProvenanceMissing();
    const TaggedEdge& te = edges[s.dt_edge];
    s.src = te.src;
    s.src_edge = te.edge_index;
    if (te.src == 0) {
      // edge from t·coA, stationary vertex from (1-t)·coB
      s.stationary = scene.coB.v[te.other_vertex];
      Vec2 off = s.stationary * one_minus_t;
      s.preimage_seg = Segment{(s.a - off) / t, (s.b - off) / t};
      std::vector<Point2> pts;
      for (const auto& p : s.rq.v) pts.push_back((p - off) / t);
      s.preimage = make_convex(std::move(pts));
    } else {
      s.stationary = scene.coA.v[te.other_vertex];
      Vec2 off = s.stationary * t;
      s.preimage_seg = Segment{(s.a - off) / one_minus_t, (s.b - off) / one_minus_t};
      std::vector<Point2> pts;
      for (const auto& p : s.rq.v) pts.push_back((p - off) / one_minus_t);
      s.preimage = make_convex(std::move(pts));
    }
  }
}

ParallelogramCover build_cover(const NormalizedScene& scene, const ParamCascade& params,
                               CoverMode mode) {
  ParallelogramCover cover;
  if (sgn(scene.gamma) == 0) return cover;
  BoundaryClassification cls =
      classify_boundary(scene, params.theta_deg, params.ell, scene.t, params.M);
  cover.segments = refine_to_j(scene, cls, params.xi, params.M);
  assign_directions(cover.segments, scene, params.xi, params.M, mode, &cover);
  erect_parallelograms(cover.segments);
  edge_provenance(cover.segments, scene);
  return cover;
}

}  // namespace bmlab
