#pragma once

#include "bmlab/geom.hpp"
#include "bmlab/sweep.hpp"

namespace bmlab {

// Convex Minkowski sum by merging both edge sequences in slope order.
ConvexPolygon minkowski_sum_convex(const ConvexPolygon& p, const ConvexPolygon& q);

// Same merge, but each output boundary edge remembers where it came from:
// src 0 edges are edges of p swept past a stationary vertex of q, src 1 the
// reverse. Parallel (tied) edges are kept split, p-part first.
struct TaggedEdge {
  Point2 a, b;
  int src = 0;
  size_t edge_index = 0;    // edge index in the source polygon
  size_t other_vertex = 0;  // vertex index in the other polygon
};

struct TaggedSum {
  ConvexPolygon poly;
  std::vector<TaggedEdge> edges;  // boundary walk, ccw
};

TaggedSum minkowski_sum_convex_tagged(const ConvexPolygon& p, const ConvexPolygon& q);

// Exact Minkowski sum of polygon-union regions: convex decomposition,
// pairwise convex sums, one-sweep union. Markers translate the other set.
Region minkowski_sum_region(const Region& a, const Region& b);

struct HullGapResult {
  ConvexPolygon hull;
  Rat gap;
};

// |co(r)| - |r| with the hull; zero iff r is convex up to measure zero.
HullGapResult hull_gap(const Region& r);

}  // namespace bmlab
