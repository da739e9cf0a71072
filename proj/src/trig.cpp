#include "bmlab/trig.hpp"

#include <map>
#include <mutex>

namespace bmlab {

const RatInterval& pi_bracket() {
  static const RatInterval pi = [] {
    // 60 significant digits, truncated; true pi lies strictly between.
    Int num("314159265358979323846264338327950288419716939937510582097494");
    Int den(10);
    mpz_pow_ui(den.get_mpz_t(), den.get_mpz_t(), 59);
    Rat lo(num, den), hi(num + 1, den);
    lo.canonicalize();
    hi.canonicalize();
    return RatInterval{lo, hi};
  }();
  return pi;
}

namespace {

Rat pow2_inv(unsigned bits) {
  Int den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  Rat q(Int(1), den);
  q.canonicalize();
  return q;
}

RatInterval pow_nonneg(const RatInterval& x, unsigned n) {
  // x.lo >= 0 so powers are monotone
  Rat lo = 1, hi = 1;
  for (unsigned i = 0; i < n; ++i) {
    lo *= x.lo;
    hi *= x.hi;
  }
  return {lo, hi};
}

// sin on [0, pi/2] via alternating Taylor series with certified remainder.
RatInterval sin_rad_quadrant(const RatInterval& x, unsigned bits) {
  const Rat eps = pow2_inv(bits);
  RatInterval sum(Rat(0));
  Rat fact(1);
  unsigned k = 0;
  Rat term_hi;
  while (true) {
    unsigned p = 2 * k + 1;
    // (2k+1)!
    if (k > 0) fact *= Rat((2 * k) * (2 * k + 1));
    RatInterval term = pow_nonneg(x, p);
    term = RatInterval{term.lo / fact, term.hi / fact};
    if (k % 2 == 0)
      sum += term;
    else
      sum = sum - term;
    // next term bounds the alternating remainder once terms decrease
    Rat next_hi = term.hi * x.hi * x.hi / Rat((p + 1) * (p + 2));
    term_hi = next_hi;
    ++k;
    if ((next_hi < eps && k >= 3) || k > 48) break;
  }
  return {sum.lo - term_hi, sum.hi + term_hi};
}

RatInterval cos_rad_quadrant(const RatInterval& x, unsigned bits) {
  const Rat eps = pow2_inv(bits);
  RatInterval sum(Rat(0));
  Rat fact(1);
  unsigned k = 0;
  Rat term_hi;
  while (true) {
    unsigned p = 2 * k;
    if (k > 0) fact *= Rat((2 * k - 1) * (2 * k));
    RatInterval term = pow_nonneg(x, p);
    term = RatInterval{term.lo / fact, term.hi / fact};
    if (k % 2 == 0)
      sum += term;
    else
      sum = sum - term;
    Rat next_hi = term.hi * x.hi * x.hi / Rat((p + 1) * (p + 2));
    term_hi = next_hi;
    ++k;
    if ((next_hi < eps && k >= 3) || k > 48) break;
  }
  return {sum.lo - term_hi, sum.hi + term_hi};
}

Rat normalize_deg(Rat d) {
  const Rat full(360);
  while (d < 0) d += full;
  while (d >= full) d -= full;
  return d;
}

}  // namespace

namespace {

struct TrigCache {
  std::map<std::pair<std::string, unsigned>, RatInterval> entries;
  std::mutex mu;

  bool get(const std::string& key, unsigned bits, RatInterval* out) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = entries.find({key, bits});
    if (it == entries.end()) return false;
    *out = it->second;
    return true;
  }
  void put(const std::string& key, unsigned bits, const RatInterval& v) {
    std::lock_guard<std::mutex> lock(mu);
    entries.emplace(std::make_pair(key, bits), v);
  }
};

TrigCache& sin_cache() {
  static TrigCache c;
  return c;
}
TrigCache& cos_cache() {
  static TrigCache c;
  return c;
}

// keep bracket endpoints small: round outward onto a dyadic grid
RatInterval round_out(const RatInterval& v, unsigned bits) {
  return {dyadic_floor(v.lo, bits + 8), dyadic_ceil(v.hi, bits + 8)};
}

}  // namespace

RatInterval sin_deg(const Rat& degrees, unsigned bits) {
  const std::string key = to_string(degrees);
  RatInterval cached;
  if (sin_cache().get(key, bits, &cached)) return cached;
  Rat d = normalize_deg(degrees);
  int sign = 1;
  if (d > Rat(180)) {
    d -= Rat(180);
    sign = -1;
  }
  if (d > Rat(90)) d = Rat(180) - d;
  // radians enclosure
  RatInterval rad = RatInterval(d) * pi_bracket();
  rad = RatInterval{rad.lo / 180, rad.hi / 180};
  RatInterval s = round_out(sin_rad_quadrant(rad, bits), bits);
  if (s.lo < 0 && d > 0) s.lo = 0;  // sin >= 0 on [0, 90]
  if (s.hi > 1) s.hi = 1;
  RatInterval out = sign > 0 ? s : -s;
  sin_cache().put(key, bits, out);
  return out;
}

RatInterval cos_deg(const Rat& degrees, unsigned bits) {
  const std::string key = to_string(degrees);
  RatInterval cached;
  if (cos_cache().get(key, bits, &cached)) return cached;
  Rat d = normalize_deg(degrees);
  if (d > Rat(180)) d = Rat(360) - d;  // cos symmetric
  int sign = 1;
  if (d > Rat(90)) {
    d = Rat(180) - d;
    sign = -1;
  }
  RatInterval rad = RatInterval(d) * pi_bracket();
  rad = RatInterval{rad.lo / 180, rad.hi / 180};
  RatInterval c = round_out(cos_rad_quadrant(rad, bits), bits);
  if (c.lo < 0 && d < Rat(90)) c.lo = 0;
  if (c.hi > 1) c.hi = 1;
  RatInterval out = sign > 0 ? c : -c;
  cos_cache().put(key, bits, out);
  return out;
}

RatInterval tan_deg(const Rat& degrees, unsigned bits) {
  if (!(rat_abs(degrees) < Rat(90))) throw BadParams("tan_deg domain");
  RatInterval s = sin_deg(degrees, bits);
  RatInterval c = cos_deg(degrees, bits);
  return interval_div(s, c);
}

namespace {

// atan on |t| small, radians; alternating series sum t - t^3/3 + ...
RatInterval atan_rad_small(const RatInterval& t, unsigned bits) {
  const Rat eps = pow2_inv(bits);
  bool flip = false;
  RatInterval x = t;
  if (sgn(x.hi) <= 0) {
    x = -x;
    flip = true;
  }
  if (sgn(x.lo) < 0) {
    // straddles zero: |x| <= m, atan within [-atan(m), atan(m)] and within x
    Rat m = std::max(rat_abs(x.lo), x.hi);
    return {-m, m};  // |atan(u)| <= |u|
  }
  RatInterval sum(Rat(0));
  unsigned k = 0;
  Rat term_hi;
  while (true) {
    unsigned p = 2 * k + 1;
    RatInterval term = pow_nonneg(x, p);
    term = RatInterval{term.lo / Rat(p), term.hi / Rat(p)};
    if (k % 2 == 0)
      sum += term;
    else
      sum = sum - term;
    Rat next_hi = term.hi * x.hi * x.hi * Rat(p) / Rat(p + 2);
    term_hi = next_hi;
    ++k;
    if ((next_hi < eps && k >= 2) || k > 80) break;
  }
  RatInterval out{sum.lo - term_hi, sum.hi + term_hi};
  return flip ? -out : out;
}

}  // namespace

RatInterval atan_deg(const RatInterval& t0, unsigned bits) {
  // reduce |t| via angle halving: atan(t) = 2 atan(t / (1 + sqrt(1+t^2)))
  RatInterval t = t0;
  int doublings = 0;
  const Rat quarter(1, 4);
  while (std::max(rat_abs(t.lo), rat_abs(t.hi)) > quarter && doublings < 6) {
    RatInterval t2 = t * t;
    RatInterval root = interval_sqrt(RatInterval{t2.lo + 1, t2.hi + 1}, bits + 16);
    t = interval_div(t, RatInterval{root.lo + 1, root.hi + 1});
    ++doublings;
  }
  RatInterval rad = atan_rad_small(t, bits + 8);
  for (int i = 0; i < doublings; ++i) rad += rad;
  // to degrees: rad * 180 / pi
  RatInterval deg = interval_div(RatInterval{rad.lo * 180, rad.hi * 180}, pi_bracket());
  return round_out(deg, bits);
}

RatInterval atan_deg(const Rat& t, unsigned bits) { return atan_deg(RatInterval(t), bits); }

}  // namespace bmlab
