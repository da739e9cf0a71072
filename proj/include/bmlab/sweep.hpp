#pragma once

#include <span>

#include "bmlab/geom.hpp"

namespace bmlab {

enum class BoolOp { Union, Intersect, Difference, Xor };

// Exact set-theoretic boolean on polygonal regions (up to measure zero).
// Result is canonical: overlap-free material rings, holes nested, rings
// rotated to lexicographic start and sorted; markers deduped with covered
// markers dropped.
Region boolean_op(BoolOp op, const Region& a, const Region& b);

// Canonical rebuild of a region from its own rings and markers.
// Validates rings (simple loops) and throws MalformedRegion.
Region canonicalize(const Region& r);

// Vertical trapezoid decomposition of the material set: disjoint convex
// pieces whose union is the region.
std::vector<ConvexPolygon> convex_pieces(const Region& r);

// One-sweep union of many convex polygons plus optional marker points.
Region union_convex(std::span<const ConvexPolygon> pieces,
                    std::span<const Point2> markers = {});

// Area of the boolean result without building the boundary.
Rat area_boolean(BoolOp op, const Region& a, const Region& b);

// Exact area of a (possibly non-canonical) region's material set.
Rat area_exact(const Region& r);

}  // namespace bmlab
