#include "bmlab/sqrt_expr.hpp"

namespace bmlab {

int cmp_lin_sqrt(const Rat& a, const Rat& b, const Rat& u) {
  if (sgn(u) < 0) throw BadParams("sqrt of negative in comparator");
  if (sgn(b) == 0 || sgn(u) == 0) return sgn(a);
  const int sb = sgn(b);
  const int sa = sgn(a);
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 vs b^2 u
  const Rat lhs = a * a;
  const Rat rhs = b * b * u;
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;
}

int cmp_two_sqrt(const Rat& x, const Rat& y, const Rat& u, const Rat& z, const Rat& v) {
  if (sgn(y) == 0 || sgn(u) == 0) return cmp_lin_sqrt(x, z, v);
  if (sgn(z) == 0 || sgn(v) == 0) return cmp_lin_sqrt(x, y, u);
  // w = sign of y*sqrt(u) + z*sqrt(v)
  int w;
  if (sgn(y) == sgn(z)) {
    w = sgn(y);
  } else {
    const Rat lu = y * y * u, rv = z * z * v;
    if (lu > rv)
      w = sgn(y);
    else if (lu < rv)
      w = sgn(z);
    else
      w = 0;
  }
  if (w == 0) return sgn(x);
  const int sx = sgn(x);
  if (sx == 0 || sx == w) return w;
  // |x| vs |y sqrt(u) + z sqrt(v)|: square the radical part
  // (y sqrt u + z sqrt v)^2 = y^2 u + z^2 v + 2yz sqrt(uv)
  const Rat lead = x * x - y * y * u - z * z * v;
  const int t = cmp_lin_sqrt(lead, Rat(-2) * y * z, u * v);
  if (t > 0) return sx;
  if (t < 0) return w;
  return 0;
}

int cmp_sqrt_vs_scaled_pair(const Rat& s, const Rat& c, const Rat& p, const Rat& q) {
  if (sgn(s) < 0 || sgn(p) < 0 || sgn(q) < 0) throw BadParams("negative area in comparator");
  if (sgn(c) <= 0) {
    // rhs <= 0 <= lhs
    const bool lhs_zero = sgn(s) == 0;
    const bool rhs_zero = sgn(c) == 0 || (sgn(p) == 0 && sgn(q) == 0);
    if (lhs_zero && rhs_zero) return 0;
    if (lhs_zero) return 1;  // rhs strictly negative
    return 1;
  }
  // sqrt(s) vs c(sqrt p + sqrt q), both sides >= 0: square once
  // s vs c^2 (p + q + 2 sqrt(pq))
  const Rat lead = s - c * c * (p + q);
  return cmp_lin_sqrt(lead, Rat(-2) * c * c, p * q);
}

int cmp_sqrt_pair_vs_pair(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  // sqrt a + sqrt b vs sqrt c + sqrt d: square both (nonneg sides)
  // a + b + 2 sqrt(ab) vs c + d + 2 sqrt(cd)
  return cmp_two_sqrt(a + b - c - d, Rat(2), a * b, Rat(-2), c * d);
}

int DeltaForm::cmp(const Rat& x) const {
  if (sgn(area_a) <= 0 || sgn(area_b) <= 0) throw EmptyRegion("deficit of empty region");
  // delta - x  sign <=> sqrt(S) vs (1+x)(sqrt P + sqrt Q)
  return cmp_sqrt_vs_scaled_pair(sum_area, Rat(1) + x, area_a, area_b);
}

RatInterval DeltaForm::value_interval(unsigned bits) const {
  RatInterval rs = interval_sqrt(RatInterval(sum_area), bits);
  RatInterval rp = interval_sqrt(RatInterval(area_a), bits);
  RatInterval rq = interval_sqrt(RatInterval(area_b), bits);
  RatInterval ratio = interval_div(rs, rp + rq);
  return {ratio.lo - 1, ratio.hi - 1};
}

std::string DeltaForm::decimal_str(int sig_digits) const {
  if (is_zero()) return "0";
  RatInterval v = value_interval(160);
  return decimal((v.lo + v.hi) / 2, sig_digits);
}

int cmp_delta(const DeltaForm& lhs, const DeltaForm& rhs) {
  // sqrt(S1)/(sqrt P1 + sqrt Q1) vs sqrt(S2)/(sqrt P2 + sqrt Q2)
  // <=> sqrt(S1 P2) + sqrt(S1 Q2) vs sqrt(S2 P1) + sqrt(S2 Q1)
  return cmp_sqrt_pair_vs_pair(lhs.sum_area * rhs.area_a, lhs.sum_area * rhs.area_b,
                               rhs.sum_area * lhs.area_a, rhs.sum_area * lhs.area_b);
}

int TForm::cmp(const Rat& x) const {
  if (sgn(area_a) <= 0 || sgn(area_b) <= 0) throw EmptyRegion("volume ratio of empty region");
  // sqrt P / (sqrt P + sqrt Q) vs x  <=>  (1-x) sqrt P vs x sqrt Q
  return cmp_two_sqrt(Rat(0), Rat(1) - x, area_a, -x, area_b);
}

bool TForm::is_rational(Rat* out) const {
  Rat root;
  if (!rat_is_square(area_a / area_b, &root)) return false;
  if (out) *out = root / (root + 1);
  return true;
}

RatInterval TForm::value_interval(unsigned bits) const {
  RatInterval rp = interval_sqrt(RatInterval(area_a), bits);
  RatInterval rq = interval_sqrt(RatInterval(area_b), bits);
  return interval_div(rp, rp + rq);
}

std::string TForm::decimal_str(int sig_digits) const {
  Rat exact;
  if (is_rational(&exact)) return decimal(exact, sig_digits);
  RatInterval v = value_interval(160);
  return decimal((v.lo + v.hi) / 2, sig_digits);
}

}  // namespace bmlab
