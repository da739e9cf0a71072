#pragma once

#include <optional>

#include "bmlab/geom.hpp"
#include "bmlab/minkowski.hpp"
#include "bmlab/sqrt_expr.hpp"

namespace bmlab {

DeltaForm deficit(const Region& a, const Region& b);
TForm volume_ratio(const Region& a, const Region& b);

// gamma = t^2 |co A \ A| + (1-t)^2 |co B \ B|
Rat gamma_value(const Region& a, const Region& b, const Rat& t);

// Fraenkel asymmetry: min over searched translations of
// |A Δ (s co(B) + x)| / |A| with s^2 |co B| = |A|. The irrational scale s is
// replaced by a rational upper bracket and the exact slack is added, so
// `value` is a certified upper bound on the true infimum.
struct AlphaResult {
  Rat value;        // certified upper bound
  Rat raw;          // symmetric-difference ratio measured at the witness
  Vec2 witness;     // x*
  Rat scale2;       // exact s^2
  Rat scale_used;   // rational bracket actually applied
  Rat scale_slack;  // (s̃² − s²)|co B| / |A|
  Rat resolution;   // final pattern-search step (search-frame units)
  long evals = 0;
};

AlphaResult asymmetry_alpha(const Region& a, const Region& b);

// min over searched (lambda, v) of max(|K_A \ A|/|A|, |K_B \ B|/|B|) where
// K_A = co(A ∪ (co(B)-v)/lambda) and K_B = lambda K_A + v.
struct OmegaResult {
  Rat value;  // upper bound on the infimum
  Rat lambda;
  Vec2 v;
  ConvexPolygon K_A, K_B;
  Rat resolution;
  long evals = 0;
};

OmegaResult omega_measure(const Region& a, const Region& b);

// delta and t computed on the convex hulls (co(A+B) = co A ⊕ co B).
struct ConvexDeficit {
  DeltaForm delta_conv;
  TForm t_conv;
};
ConvexDeficit convex_deficit(const Region& a, const Region& b);

// True certifies z ∈ D_t: |R_A ∩ H_{-(1-t)/t, z}(R_B)| > t^-2 gamma.
// R_A ⊆ co A and R_B ⊆ co B are checked (ContainmentViolation).
bool averaging_certificate(const Region& r_a, const Region& r_b, const Point2& z,
                           const Rat& t, const Rat& gamma,
                           const ConvexPolygon& co_a, const ConvexPolygon& co_b);

struct StabilityMeasures {
  DeltaForm delta;
  TForm t_ratio;
  Rat t_param;  // rational interpolation weight used for gamma
  Rat tau;
  Rat gamma;
  Rat hull_gap_a, hull_gap_b;
  AlphaResult alpha;
  OmegaResult omega;
  DeltaForm delta_conv;
  TForm t_conv;
};

StabilityMeasures compute_measures(const Region& a, const Region& b,
                                   const Rat& t_param, const Rat& tau);

// Parameter cascade: xi from epsilon, theta from xi, ell from theta,
// all via exact binary search against conservative trig brackets.
struct ParamCascade {
  Rat epsilon;
  Rat tau;
  long M = 1000;
  Rat alpha_deg;  // 720/M
  Rat t;
  Rat xi;
  Rat theta_deg;
  Rat ell;
  bool practical = false;
};

struct CascadeOverride {
  Rat xi, theta_deg, ell;
};

ParamCascade param_cascade(const Rat& epsilon, const Rat& tau, const Rat& t,
                           const std::optional<CascadeOverride>& override_params = {});

// Re-verifies the three cascade inequalities with conservative brackets.
struct CascadeCheck {
  bool xi_ok, theta_ok, ell_ok;
  bool all() const { return xi_ok && theta_ok && ell_ok; }
};
CascadeCheck cascade_check(const ParamCascade& c);

}  // namespace bmlab
