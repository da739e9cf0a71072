#pragma once

#include <array>

#include "bmlab/measures.hpp"
#include "bmlab/normalize.hpp"

namespace bmlab {

// Boundary positions live on the tagged slope-merge walk of co(D_t):
// key = edge_index + parameter, a single rational in [0, E).

// (theta, ell)-bisecting test against the documented rational surrogate
// triangle: apex realized by the exact rational rotation pair bracketing
// tan(theta/4) from above, arm length mu·|op| with mu bracketing ell/|op|
// from above. True certifies that the ideal triangle fits (closed containment).
bool is_bisecting(const Point2& p, const ConvexPolygon& c, const Rat& theta_deg,
                  const Rat& ell);

// (theta, ell)-good test: exists q,r in c with |pq|,|pr| >= ell and
// angle qpr >= 180 - theta. Decided over polygon vertices plus conservative
// inner brackets of the circle(p, ell) boundary crossings.
bool is_good_point(const Point2& p, const ConvexPolygon& c, const Rat& theta_deg,
                   const Rat& ell);

// cyclic interval on the walk domain [0, E); wraps when hi < lo
struct WalkInterval {
  Rat lo, hi;
};

struct LevelPartition {
  std::vector<WalkInterval> bad;       // merged maximal bad arcs
  std::vector<Rat> good_subdivision;   // extra keys splitting good arcs <= alpha/3
  bool all_bad = false;
  bool contains_bad(const Rat& key) const;
};

struct BoundaryClassification {
  std::vector<Point2> inscribed;        // chord-walk polygon vertices
  std::vector<Rat> inscribed_keys;
  std::vector<char> side_good;          // per inscribed side
  std::array<LevelPartition, 3> levels; // s = 2l, 3l, 100 t^-1 l
  std::array<Rat, 3> s_values;
};

struct JSegment {
  Point2 a, b;
  Rat key_lo, key_hi;
  size_t dt_edge;                 // tagged edge on the slope-merge
  bool good[3] = {false, false, false};
  size_t block = 0;               // direction block id
  bool wide_block = false;        // direction from the wide-arc fallback
  long dir_index = 0;             // direction angle = dir_index * alpha/2
  Vec2 v;                         // inward vector (rational unit * bracketed length)
  ConvexPolygon rq;               // parallelogram q ⊕ [0, v]
  int src = 0;                    // 0: from co(A) edge, 1: from co(B) edge
  size_t src_edge = 0;            // edge index in coA / coB
  Point2 stationary;              // p_{q,B} (src 0) or p_{q,A} (src 1), unscaled
  Segment preimage_seg;           // q_A or q_B
  ConvexPolygon preimage;         // R_{q,A} or R_{q,B}
};

struct ParallelogramCover {
  std::vector<JSegment> segments;
  long distinct_directions = 0;
  long wide_blocks = 0;
  bool empty() const { return segments.empty(); }
};

enum class CoverMode { Cascade, Practical };

BoundaryClassification classify_boundary(const NormalizedScene& scene,
                                         const Rat& theta_deg, const Rat& ell,
                                         const Rat& t, long M = 1000);

// Common refinement of the three level partitions, the tagged edges, and the
// <= xi sqrt(gamma) length cap. Empty when gamma == 0.
std::vector<JSegment> refine_to_j(const NormalizedScene& scene,
                                  const BoundaryClassification& cls, const Rat& xi,
                                  long M = 1000);

// Direction assignment (the m-alpha grid rules; wide bad arcs get the
// practical fallback or throw ArcTooWide in cascade mode), magnitudes
// 15 sqrt(gamma) / 3 xi sqrt(gamma), parallelogram erection, provenance.
void assign_directions(std::vector<JSegment>& segs, const NormalizedScene& scene,
                       const Rat& xi, long M, CoverMode mode,
                       ParallelogramCover* stats_out = nullptr);

void erect_parallelograms(std::vector<JSegment>& segs);

void edge_provenance(std::vector<JSegment>& segs, const NormalizedScene& scene);

// Full pipeline.
ParallelogramCover build_cover(const NormalizedScene& scene, const ParamCascade& params,
                               CoverMode mode);

// exact angular-width certificate: true when angle(u, v) <= bound certified
bool angle_at_most(const Vec2& u, const Vec2& v, const Rat& bound_deg);
// true when angle(u, v) >= bound certified
bool angle_at_least(const Vec2& u, const Vec2& v, const Rat& bound_deg);

// rational unit vector at angle index * (alpha/2) degrees on the direction grid
Vec2 grid_unit(long index, long M = 1000);

}  // namespace bmlab
