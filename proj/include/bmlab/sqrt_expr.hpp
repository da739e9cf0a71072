#pragma once

#include "bmlab/rat.hpp"

namespace bmlab {

// Exact sign computations for expressions with square roots of nonnegative
// rationals. All comparisons resolve by repeated squaring; no approximation.

// sign of a + b*sqrt(u), u >= 0
int cmp_lin_sqrt(const Rat& a, const Rat& b, const Rat& u);

// sign of x + y*sqrt(u) + z*sqrt(v), u,v >= 0
int cmp_two_sqrt(const Rat& x, const Rat& y, const Rat& u, const Rat& z, const Rat& v);

// sign of sqrt(s) - c*(sqrt(p) + sqrt(q)), s,p,q >= 0
int cmp_sqrt_vs_scaled_pair(const Rat& s, const Rat& c, const Rat& p, const Rat& q);

// sign of (sqrt(a)+sqrt(b)) - (sqrt(c)+sqrt(d)), all >= 0
int cmp_sqrt_pair_vs_pair(const Rat& a, const Rat& b, const Rat& c, const Rat& d);

// Brunn-Minkowski deficit delta = sqrt(S)/(sqrt(P)+sqrt(Q)) - 1 kept in exact
// squared form (S = |A+B|, P = |A|, Q = |B|).
struct DeltaForm {
  Rat sum_area;  // S
  Rat area_a;    // P
  Rat area_b;    // Q

  // sign of (delta - x), exact
  int cmp(const Rat& x) const;
  bool is_zero() const { return cmp(Rat(0)) == 0; }
  RatInterval value_interval(unsigned bits = 120) const;
  std::string decimal_str(int sig_digits = 12) const;
};

// sign of (lhs.delta - rhs.delta), exact
int cmp_delta(const DeltaForm& lhs, const DeltaForm& rhs);

// Normalized volume ratio t = sqrt(P)/(sqrt(P)+sqrt(Q)), exact squared form.
struct TForm {
  Rat area_a;  // P
  Rat area_b;  // Q

  int cmp(const Rat& x) const;  // sign of (t - x)
  bool is_rational(Rat* out = nullptr) const;
  RatInterval value_interval(unsigned bits = 120) const;
  std::string decimal_str(int sig_digits = 12) const;
};

}  // namespace bmlab
