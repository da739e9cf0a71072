#include "bmlab/rat.hpp"

#include <algorithm>
#include <cctype>

namespace bmlab {

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw BadParams("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      Int num(s.substr(0, slash), 10);
      Int den(s.substr(slash + 1), 10);
      if (sgn(Rat(den)) == 0) throw BadParams("zero denominator: " + s);
      Rat q(num, den);
      q.canonicalize();
      return q;
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) {
      return Rat(Int(s, 10));
    }
    // decimal: sign, integer part, fraction part
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const size_t frac_len = s.size() - dot - 1;
    Int num(digits, 10);
    Int den(1);
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rat q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw BadParams("bad rational literal: " + s);
  }
}

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Int isqrt(const Int& n) {
  if (sgn(Rat(n)) < 0) throw BadParams("isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Int& n, Int* root) {
  if (mpz_sgn(n.get_mpz_t()) < 0) return false;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
  if (root) *root = isqrt(n);
  return true;
}

bool rat_is_square(const Rat& q, Rat* root) {
  if (sgn(q) < 0) return false;
  Int rn, rd;
  if (!is_perfect_square(q.get_num(), &rn)) return false;
  if (!is_perfect_square(q.get_den(), &rd)) return false;
  if (root) {
    Rat r(rn, rd);
    r.canonicalize();
    *root = r;
  }
  return true;
}

namespace {

// floor(sqrt(q * 4^k)) / 2^k
Rat sqrt_floor_scaled(const Rat& q, unsigned bits) {
  Int four_k(1);
  mpz_mul_2exp(four_k.get_mpz_t(), four_k.get_mpz_t(), 2 * bits);
  Int scaled_num = q.get_num() * four_k;
  // floor(sqrt(num/den)) = floor(sqrt(num*den)/den)
  Int prod = scaled_num * q.get_den();
  Int r = isqrt(prod);
  Int den_shift = q.get_den();
  mpz_mul_2exp(den_shift.get_mpz_t(), den_shift.get_mpz_t(), bits);
  Rat out(r, den_shift);
  out.canonicalize();
  return out;
}

}  // namespace

Rat sqrt_lower(const Rat& q, unsigned bits) {
  if (sgn(q) < 0) throw BadParams("sqrt of negative");
  if (sgn(q) == 0) return Rat(0);
  Rat r;
  if (rat_is_square(q, &r)) return r;
  return sqrt_floor_scaled(q, bits);
}

Rat sqrt_upper(const Rat& q, unsigned bits) {
  if (sgn(q) < 0) throw BadParams("sqrt of negative");
  if (sgn(q) == 0) return Rat(0);
  Rat r;
  if (rat_is_square(q, &r)) return r;
  Rat lo = sqrt_floor_scaled(q, bits);
  Int one(1);
  Int den_shift(1);
  mpz_mul_2exp(den_shift.get_mpz_t(), den_shift.get_mpz_t(), bits);
  Rat step(one, den_shift);
  step.canonicalize();
  return lo + step;
}

Rat dyadic_floor(const Rat& q, unsigned bits) {
  Int num = q.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits);
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  Int den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  Rat out(fl, den);
  out.canonicalize();
  return out;
}

Rat dyadic_ceil(const Rat& q, unsigned bits) {
  Int num = q.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits);
  Int cl;
  mpz_cdiv_q(cl.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  Int den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  Rat out(cl, den);
  out.canonicalize();
  return out;
}

namespace {

// simplest rational in [lo, hi] for 0 < lo <= hi
Rat simplest_pos(const Rat& lo, const Rat& hi) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
  Rat fl_r(fl);
  if (lo == fl_r) return lo;
  if (fl_r + 1 <= hi) return fl_r + 1;
  // both strictly inside (fl, fl+1)
  Rat inner = simplest_pos(Rat(1) / (hi - fl_r), Rat(1) / (lo - fl_r));
  return fl_r + Rat(1) / inner;
}

}  // namespace

Rat simplest_in(const Rat& lo, const Rat& hi) {
  if (hi < lo) throw BadParams("empty interval");
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rat(0);
  if (sgn(hi) < 0) return -simplest_pos(-hi, -lo);
  return simplest_pos(lo, hi);
}

Rat sqrt_upper_simple(const Rat& q, unsigned bits) {
  if (sgn(q) < 0) throw BadParams("sqrt of negative");
  if (sgn(q) == 0) return Rat(0);
  Rat r;
  if (rat_is_square(q, &r)) return r;
  Rat hi = sqrt_upper(q, bits);
  Rat lo = sqrt_lower(q, bits);
  Rat cand = simplest_in(hi, hi + (hi - lo));
  if (cand * cand >= q) return cand;
  return hi;
}

std::string decimal(const Rat& q, int sig_digits) {
  if (sig_digits < 1) sig_digits = 1;
  if (sgn(q) == 0) return "0";
  const bool neg = sgn(q) < 0;
  Rat a = rat_abs(q);

  // decimal exponent: 10^(e-1) <= a < 10^e
  int e = 0;
  const Rat ten(10), one(1), tenth(1, 10);
  Rat t = a;
  while (t >= one) { t /= ten; ++e; }
  while (t < tenth) { t *= ten; --e; }
  // digits = round(a * 10^(sig-e)), value = 0.digits * 10^e
  Int num = a.get_num(), den = a.get_den();
  int shift = sig_digits - e;
  if (shift > 0) {
    Int p(10);
    mpz_pow_ui(p.get_mpz_t(), p.get_mpz_t(), shift);
    num *= p;
  } else if (shift < 0) {
    Int p(10);
    mpz_pow_ui(p.get_mpz_t(), p.get_mpz_t(), -shift);
    den *= p;
  }
  // round half away from zero
  Int twice = 2 * num + den;
  Int digits;
  mpz_fdiv_q(digits.get_mpz_t(), twice.get_mpz_t(), Int(2 * den).get_mpz_t());
  std::string ds = digits.get_str();
  if ((int)ds.size() > sig_digits) {  // rounding bumped 999->1000
    ds.pop_back();
    ++e;
  }
  // place decimal point: value = 0.ds * 10^e
  std::string out;
  if (e > 0 && e <= sig_digits) {
    out = ds.substr(0, e);
    std::string frac = ds.substr(e);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  } else if (e <= 0 && e > -4) {
    std::string frac = ds;
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (frac.empty()) frac = "0";
    out = "0." + std::string(-e, '0') + frac;
  } else {
    std::string mant = ds;
    std::string frac = mant.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = mant.substr(0, 1);
    if (!frac.empty()) out += "." + frac;
    out += "e" + std::to_string(e - 1);
  }
  return neg ? "-" + out : out;
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
  Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  Rat mn = std::min(std::min(a, b), std::min(c, d));
  Rat mx = std::max(std::max(a, b), std::max(c, d));
  return {mn, mx};
}

RatInterval interval_div(const RatInterval& a, const RatInterval& b) {
  if (sgn(b.lo) <= 0 && sgn(b.hi) >= 0) throw BadParams("interval division by zero");
  Rat p = a.lo / b.lo, q = a.lo / b.hi, r = a.hi / b.lo, s = a.hi / b.hi;
  return {std::min(std::min(p, q), std::min(r, s)),
          std::max(std::max(p, q), std::max(r, s))};
}

RatInterval interval_sqrt(const RatInterval& a, unsigned bits) {
  if (sgn(a.lo) < 0) throw BadParams("interval sqrt of negative");
  return {sqrt_lower(a.lo, bits), sqrt_upper(a.hi, bits)};
}

}  // namespace bmlab
