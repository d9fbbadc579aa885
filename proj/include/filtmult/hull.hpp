#pragma once

#include "filtmult/rational.hpp"

#include <cstdint>
#include <vector>

namespace filtmult::geometry {

using Point = std::vector<std::int64_t>;

/// Closed half-space normal · x >= offset with a primitive integer normal.
struct HalfSpace {
  std::vector<std::int64_t> normal;
  std::int64_t offset = 0;

  bool contains(const Point& p) const;
  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

struct Hull {
  int dim = 0;
  /// False when the points span a proper affine subspace (volume 0, no facets).
  bool full_dimensional = false;
  Rational volume;
  /// Input points spanning the boundary (extreme points; in 3-D possibly also
  /// points on an edge), sorted lexicographically.
  std::vector<Point> vertices;
  /// One entry per facet, sorted; inward-pointing normals.
  std::vector<HalfSpace> facets;
};

/// Exact convex hull of integer points in dimension 1, 2 or 3.
/// Throws Error(DimensionUnsupported) for other dimensions.
Hull convex_hull(int dim, const std::vector<Point>& points);

}  // namespace filtmult::geometry
