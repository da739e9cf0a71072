#pragma once

#include <optional>

#include "bmlab/geom.hpp"
#include "bmlab/minkowski.hpp"

namespace bmlab {

// Canonical surrogate frame. A unit equilateral triangle has irrational
// vertices, so normalization targets the rational right triangle below with
// its barycenter at the origin; every frame constant is re-derived for it.
namespace frame {

// T = (-1/3,-1/3), (2/3,-1/3), (-1/3,2/3); barycenter at the origin
const ConvexPolygon& canonical_triangle();
const ConvexPolygon& canonical_triangle_neg2();  // T' = -2T

inline Rat area_T() { return rat(1, 2); }
inline Rat area_Tprime() { return rat(2); }
// squared distance from o to dT (nearest side: the hypotenuse)
inline Rat inradius2_T() { return rat(1, 18); }
// squared max distance from o to a vertex of T'
inline Rat circumradius2_Tprime() { return rat(20, 9); }

}  // namespace frame

struct NormalizedScene {
  Region A, B;    // normalized representatives (B already includes b_shift)
  Rat t;
  ConvexPolygon K;       // co(A ∪ B)
  ConvexPolygon T;       // maximal-area triangle of K == frame triangle
  ConvexPolygon Tprime;  // -2T
  ConvexPolygon coA, coB, coDt;
  Region Dt;             // tA + (1-t)B, exact
  TaggedSum dt_tagged;   // slope-merge of t·coA and (1-t)·coB with provenance
  Rat gap_a, gap_b;      // |coA \ A|, |coB \ B|
  Rat gamma;             // t^2 gap_a + (1-t)^2 gap_b
  AffineMap map;         // the applied normalization map
  Vec2 b_shift;          // pre-map translation applied to b
};

struct NormalizeOptions {
  // When set, skips the hull-area alignment search and uses this translation
  // for b (pass {0,0} to reproduce an already-normalized scene bit-exactly).
  std::optional<Vec2> b_shift;
};

// Maximal-area triangle over vertex triples; ties broken by the first triple
// in index order. Result vertices are vertices of k, ccw.
ConvexPolygon max_area_triangle(const ConvexPolygon& k);

// Intersection of the ray from the origin through p with the boundary of e.
Point2 radial_projection(const Point2& p, const ConvexPolygon& e);

NormalizedScene normalize_scene(const Region& a, const Region& b, const Rat& t,
                                const NormalizeOptions& opts = {});

// Translation x minimizing |co(a ∪ (b+x))| found by pattern search in the
// hull frame of a (exactly affine-equivariant).
Vec2 align_translation(const Region& a, const Region& b);

}  // namespace bmlab
