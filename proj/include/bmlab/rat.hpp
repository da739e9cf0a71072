#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>

#include "bmlab/errors.hpp"

namespace bmlab {

// Exact scalar: arbitrary-precision rational, always canonical (lowest terms,
// positive denominator). mpq_class canonicalizes on construction from
// integers; results of arithmetic are canonical.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw BadParams("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline int sgn(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }
inline Rat rat_abs(const Rat& q) { return sgn(q) < 0 ? Rat(-q) : q; }

// Parses "p", "p/q", or a plain decimal like "-3.25". Throws BadParams.
Rat parse_rat(const std::string& s);

// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rat& q);

// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);
bool is_perfect_square(const Int& n, Int* root = nullptr);

// True iff q is the square of a rational; root receives the nonneg root.
bool rat_is_square(const Rat& q, Rat* root = nullptr);

// Rational brackets of sqrt(q), q >= 0: lo <= sqrt(q) <= hi and
// hi - lo <= 2^-bits * max(1, sqrt(q)).
Rat sqrt_lower(const Rat& q, unsigned bits);
Rat sqrt_upper(const Rat& q, unsigned bits);

// Dyadic rounding: nearest multiple of 2^-bits toward -inf / +inf.
Rat dyadic_floor(const Rat& q, unsigned bits);
Rat dyadic_ceil(const Rat& q, unsigned bits);

// Smallest-denominator rational in the closed interval [lo, hi] (Stern-Brocot).
Rat simplest_in(const Rat& lo, const Rat& hi);

// Small-denominator upper bound of sqrt(q): exact when q is a square, else
// a simple rational r with r >= sqrt(q), r - sqrt(q) <= ~2^-bits.
Rat sqrt_upper_simple(const Rat& q, unsigned bits);

// Decimal rendering with the given number of significant digits
// (round-half-away-from-zero; deterministic).
std::string decimal(const Rat& q, int sig_digits = 12);

// Closed rational interval; exact interval arithmetic (no rounding).
struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rat v) : lo(v), hi(std::move(v)) {}
  RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}

  Rat width() const { return hi - lo; }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }

  RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
  RatInterval operator*(const RatInterval& o) const;
  RatInterval operator-() const { return {-hi, -lo}; }
  RatInterval& operator+=(const RatInterval& o) { *this = *this + o; return *this; }
};

RatInterval interval_div(const RatInterval& a, const RatInterval& b);  // 0 not in b
RatInterval interval_sqrt(const RatInterval& a, unsigned bits);        // a.lo >= 0

}  // namespace bmlab
