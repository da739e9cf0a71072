#include "bmlab/measures.hpp"

#include <algorithm>
#include <array>

#include "bmlab/normalize.hpp"
#include "bmlab/search.hpp"
#include "bmlab/sweep.hpp"
#include "bmlab/trig.hpp"

namespace bmlab {

namespace {

void require_nonempty(const Region& a, const Region& b) {
  if (a.is_empty() || b.is_empty()) throw EmptyRegion();
  if (!a.has_material() || !b.has_material())
    throw EmptyRegion("region has measure zero");
}

AffineMap triangle_frame(const Point2& t0, const Point2& t1, const Point2& t2) {
  const ConvexPolygon& target = frame::canonical_triangle();
  Point2 bary = (t0 + t1 + t2) / rat(3);
  Vec2 u1 = t1 - t0, u2 = t2 - t0;
  Vec2 w1 = target.v[1] - target.v[0], w2 = target.v[2] - target.v[0];
  Rat det = u1.cross(u2);
  if (sgn(det) == 0) throw DegenerateInstance("flat maximal triangle");
  AffineMap m;
  m.m00 = (w1.x * u2.y - w2.x * u1.y) / det;
  m.m01 = (w2.x * u1.x - w1.x * u2.x) / det;
  m.m10 = (w1.y * u2.y - w2.y * u1.y) / det;
  m.m11 = (w2.y * u1.x - w1.y * u2.x) / det;
  m.shift = -m.apply_linear(bary);
  return m;
}

// Frame sending the maximal triangle of co(a) to the canonical triangle.
// The triangle gives six vertex correspondences; the one whose frame image of
// (centroid b, centroid a) is lexicographically smallest is chosen, which
// makes the frame (hence every search grid built in it) exactly equivariant
// under common invertible affine maps.
AffineMap search_frame(const Region& a, const Region& b) {
  ConvexPolygon hull = region_hull(a);
  ConvexPolygon tri = max_area_triangle(hull);
  Point2 cb = region_hull(b).centroid();
  Point2 ca = hull.centroid();
  const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
  AffineMap best;
  bool have = false;
  std::array<Rat, 4> best_key;
  for (const auto& p : perms) {
    AffineMap f = triangle_frame(tri.v[p[0]], tri.v[p[1]], tri.v[p[2]]);
    Point2 ib = f.apply(cb), ia = f.apply(ca);
    std::array<Rat, 4> key = {ib.x, ib.y, ia.x, ia.y};
    if (!have || key < best_key) {
      best = f;
      best_key = key;
      have = true;
    }
  }
  return best;
}

ConvexPolygon scale_about(const ConvexPolygon& p, const Point2& center, const Rat& s) {
  std::vector<Point2> pts;
  pts.reserve(p.size());
  for (const auto& v : p.v) pts.push_back(center + (v - center) * s);
  return make_convex(std::move(pts));
}

}  // namespace

DeltaForm deficit(const Region& a, const Region& b) {
  require_nonempty(a, b);
  Region sum = minkowski_sum_region(a, b);
  return DeltaForm{area_exact(sum), area_exact(a), area_exact(b)};
}

TForm volume_ratio(const Region& a, const Region& b) {
  require_nonempty(a, b);
  return TForm{area_exact(a), area_exact(b)};
}

Rat gamma_value(const Region& a, const Region& b, const Rat& t) {
  require_nonempty(a, b);
  Rat ga = hull_gap(a).gap;
  Rat gb = hull_gap(b).gap;
  return t * t * ga + (Rat(1) - t) * (Rat(1) - t) * gb;
}

AlphaResult asymmetry_alpha(const Region& a, const Region& b) {
  require_nonempty(a, b);
  AlphaResult out;
  const Rat area_a = area_exact(a);
  ConvexPolygon co_b = region_hull(b);
  const Rat area_cb = co_b.area();
  out.scale2 = area_a / area_cb;
  Rat s_exact;
  if (rat_is_square(out.scale2, &s_exact)) {
    out.scale_used = s_exact;
    out.scale_slack = 0;
  } else {
    out.scale_used = sqrt_upper(out.scale2, 64);
    out.scale_slack = (out.scale_used * out.scale_used - out.scale2) * area_cb / area_a;
  }

  AffineMap fr = search_frame(a, b);
  Region a_f = transform(fr, a);
  const Rat area_af = area_exact(a_f);
  ConvexPolygon cb_f = transform(fr, co_b);
  ConvexPolygon scaled = scale_about(cb_f, cb_f.centroid(), out.scale_used);
  Region scaled_region = region_from(scaled);

  auto objective = [&](const Vec2& x) {
    return area_boolean(BoolOp::Xor, a_f, translate(scaled_region, x));
  };
  ConvexPolygon ca_f = region_hull(a_f);
  std::vector<Vec2> seeds;
  seeds.push_back(ca_f.centroid() - scaled.centroid());
  seeds.push_back(ca_f.v[0] - scaled.v[0]);
  BBox ba = ca_f.bbox(), bb = scaled.bbox();
  seeds.push_back(Vec2{(ba.xmin + ba.xmax - bb.xmin - bb.xmax) / 2,
                       (ba.ymin + ba.ymax - bb.ymin - bb.ymax) / 2});
  PatternSearchResult r =
      pattern_search_2d(objective, seeds, rat(1, 4), rat(1, 1 << 21));
  out.raw = r.value / area_af;
  out.value = out.raw + out.scale_slack;
  out.witness = fr.inverse().apply_linear(r.arg);
  out.resolution = r.final_step;
  out.evals = r.evals;
  return out;
}

OmegaResult omega_measure(const Region& a, const Region& b) {
  require_nonempty(a, b);
  AffineMap fr = search_frame(a, b);
  Region a_f = transform(fr, a);
  Region b_f = transform(fr, b);
  const Rat fa = area_exact(a_f), fb = area_exact(b_f);
  ConvexPolygon ca = region_hull(a_f), cb = region_hull(b_f);
  const Rat big(1000000);

  // K_A = co(A ∪ (co B - v)/λ); A ⊆ K_A and B ⊆ λ K_A + v by construction, so
  // |K_A \ A| = |K_A| - |A| and |K_B \ B| = λ²|K_A| - |B|.
  auto eval = [&](const std::vector<Rat>& p, ConvexPolygon* ka_out) -> Rat {
    const Rat& lambda = p[0];
    if (sgn(lambda) <= 0) return big;
    Vec2 v{p[1], p[2]};
    std::vector<Point2> pts = ca.v;
    for (const auto& q : cb.v) pts.push_back((q - v) / lambda);
    ConvexPolygon ka = convex_hull(pts);
    Rat ka_area = ka.area();
    Rat va = (ka_area - fa) / fa;
    Rat vb = (lambda * lambda * ka_area - fb) / fb;
    if (ka_out) *ka_out = std::move(ka);
    return std::max(va, vb);
  };
  auto objective = [&](const std::vector<Rat>& p) { return eval(p, nullptr); };

  Rat lam0 = sqrt_upper(cb.area() / ca.area(), 24);
  std::vector<std::vector<Rat>> seeds;
  Point2 ga = ca.centroid(), gb = cb.centroid();
  seeds.push_back({Rat(1), gb.x - ga.x, gb.y - ga.y});
  seeds.push_back({Rat(1), Rat(0), Rat(0)});
  seeds.push_back({lam0, gb.x - lam0 * ga.x, gb.y - lam0 * ga.y});
  PatternSearchNdResult r = pattern_search_nd(
      objective, seeds, rat(1, 4), rat(1, 1 << 21), {rat(1, 2), rat(1), rat(1)});

  OmegaResult out;
  out.value = r.value;
  out.lambda = r.arg[0];
  out.resolution = r.final_step;
  out.evals = r.evals;
  ConvexPolygon ka_f;
  eval(r.arg, &ka_f);
  // map the witnesses back to input coordinates: K_B = λ K_A + v with
  // v = L⁻¹ v_f + (1-λ) shift for F⁻¹(x) = L⁻¹ x + shift
  AffineMap inv = fr.inverse();
  out.K_A = transform(inv, ka_f);
  ConvexPolygon kb_f = scale_about(ka_f, Point2{rat(0), rat(0)}, r.arg[0]);
  for (auto& p : kb_f.v) p = p + Vec2{r.arg[1], r.arg[2]};
  out.K_B = transform(inv, make_convex(kb_f.v));
  out.v = inv.apply_linear(Vec2{r.arg[1], r.arg[2]}) + inv.shift * (Rat(1) - out.lambda);
  return out;
}

ConvexDeficit convex_deficit(const Region& a, const Region& b) {
  require_nonempty(a, b);
  ConvexPolygon ca = region_hull(a), cb = region_hull(b);
  ConvexPolygon sum = minkowski_sum_convex(ca, cb);
  return {DeltaForm{sum.area(), ca.area(), cb.area()}, TForm{ca.area(), cb.area()}};
}

bool averaging_certificate(const Region& r_a, const Region& r_b, const Point2& z,
                           const Rat& t, const Rat& gamma,
                           const ConvexPolygon& co_a, const ConvexPolygon& co_b) {
  if (sgn(t) <= 0 || t >= 1) throw BadParams("t must lie in (0,1)");
  auto check_inside = [](const Region& r, const ConvexPolygon& hull) {
    for (const auto& ring : r.rings)
      for (const auto& p : ring.pts)
        if (!hull.contains(p)) throw ContainmentViolation();
    for (const auto& m : r.markers)
      if (!hull.contains(m)) throw ContainmentViolation();
  };
  check_inside(r_a, co_a);
  check_inside(r_b, co_b);
  // H = negative homothety of ratio -(1-t)/t through z
  const Rat ratio = -(Rat(1) - t) / t;
  AffineMap h;
  h.m00 = ratio;
  h.m01 = 0;
  h.m10 = 0;
  h.m11 = ratio;
  h.shift = z - z * ratio;
  Region hb = transform(h, r_b);
  Rat inter = area_boolean(BoolOp::Intersect, r_a, hb);
  return inter > gamma / (t * t);
}

StabilityMeasures compute_measures(const Region& a, const Region& b,
                                   const Rat& t_param, const Rat& tau) {
  StabilityMeasures m;
  m.delta = deficit(a, b);
  m.t_ratio = volume_ratio(a, b);
  m.t_param = t_param;
  m.tau = tau;
  m.hull_gap_a = hull_gap(a).gap;
  m.hull_gap_b = hull_gap(b).gap;
  m.gamma = t_param * t_param * m.hull_gap_a +
            (Rat(1) - t_param) * (Rat(1) - t_param) * m.hull_gap_b;
  m.alpha = asymmetry_alpha(a, b);
  m.omega = omega_measure(a, b);
  ConvexDeficit cd = convex_deficit(a, b);
  m.delta_conv = cd.delta_conv;
  m.t_conv = cd.t_conv;
  return m;
}

namespace {

// largest dyadic x in (0, hi] with pred(x) true; pred monotone (true downward)
Rat dyadic_search(const Rat& hi, const std::function<bool(const Rat&)>& pred,
                  int iters) {
  if (!pred(Rat(0))) return Rat(-1);  // infeasible even at 0
  Rat lo(0), high = hi;
  if (pred(high)) return high;
  for (int i = 0; i < iters; ++i) {
    Rat mid = (lo + high) / 2;
    if (pred(mid))
      lo = mid;
    else
      high = mid;
  }
  return lo;
}

}  // namespace

ParamCascade param_cascade(const Rat& epsilon, const Rat& tau, const Rat& t,
                           const std::optional<CascadeOverride>& override_params) {
  if (sgn(epsilon) <= 0) throw InfeasibleCascade("epsilon must be positive");
  if (sgn(tau) <= 0 || tau > rat(1, 2)) throw BadParams("tau must lie in (0, 1/2]");
  if (sgn(t) <= 0 || t > rat(1, 2)) throw BadParams("t must lie in (0, 1/2]");
  ParamCascade c;
  c.epsilon = epsilon;
  c.tau = tau;
  c.t = t;
  c.M = 1000;
  c.alpha_deg = rat(720, c.M);

  const Rat weight = tau * tau + (Rat(1) - tau) * (Rat(1) - tau);
  const Rat mrat(c.M);
  auto xi_ok = [&](const Rat& xi) {
    return weight * (rat(25) / tau * mrat * xi * xi + rat(16000) / tau * mrat * xi) <=
           epsilon;
  };
  c.xi = dyadic_search(Rat(1), xi_ok, 160);
  if (sgn(c.xi) <= 0) throw InfeasibleCascade("no positive xi satisfies the budget");

  // sin(4 theta) <= (1/2) xi^2 sin(28)^6, conservative directions
  const Rat sin28_lo = sin_deg(rat(28), 128).lo;
  Rat rhs = c.xi * c.xi / 2;
  for (int i = 0; i < 6; ++i) rhs *= sin28_lo;
  auto theta_ok = [&](const Rat& th) {
    if (sgn(th) == 0) return true;
    return sin_deg(Rat(4) * th, 192).hi <= rhs;
  };
  c.theta_deg = dyadic_search(rat(1, 2), theta_ok, 220);
  if (sgn(c.theta_deg) <= 0) throw InfeasibleCascade("no positive theta");

  // (1440/theta + 3) * 4 (1 + 100/t) * ell * (100/99) * sqrt(12) < alpha/3,
  // compared in radians with outward-conservative brackets
  const Rat sqrt12_hi = sqrt_upper(rat(12), 128);
  const Rat coef = (rat(1440) / c.theta_deg + 3) * 4 * (Rat(1) + rat(100) / t) *
                   rat(100, 99) * sqrt12_hi;
  const Rat alpha_rad_lo = c.alpha_deg / 3 * pi_bracket().lo / 180;
  auto ell_ok = [&](const Rat& l) { return coef * l < alpha_rad_lo; };
  c.ell = dyadic_search(rat(1, 2), ell_ok, 260);
  if (sgn(c.ell) <= 0) throw InfeasibleCascade("no positive ell");

  if (override_params) {
    if (sgn(override_params->xi) <= 0 || sgn(override_params->theta_deg) <= 0 ||
        sgn(override_params->ell) <= 0)
      throw BadParams("override parameters must be positive");
    c.xi = override_params->xi;
    c.theta_deg = override_params->theta_deg;
    c.ell = override_params->ell;
    c.practical = true;
  }
  return c;
}

CascadeCheck cascade_check(const ParamCascade& c) {
  CascadeCheck out;
  const Rat weight = c.tau * c.tau + (Rat(1) - c.tau) * (Rat(1) - c.tau);
  const Rat mrat(c.M);
  out.xi_ok = weight * (rat(25) / c.tau * mrat * c.xi * c.xi +
                        rat(16000) / c.tau * mrat * c.xi) <= c.epsilon;
  const Rat sin28_lo = sin_deg(rat(28), 128).lo;
  Rat rhs = c.xi * c.xi / 2;
  for (int i = 0; i < 6; ++i) rhs *= sin28_lo;
  out.theta_ok = sin_deg(Rat(4) * c.theta_deg, 192).hi <= rhs;
  const Rat sqrt12_hi = sqrt_upper(rat(12), 128);
  const Rat coef = (rat(1440) / c.theta_deg + 3) * 4 * (Rat(1) + rat(100) / c.t) *
                   rat(100, 99) * sqrt12_hi;
  out.ell_ok = coef * c.ell < c.alpha_deg / 3 * pi_bracket().lo / 180;
  return out;
}

}  // namespace bmlab
