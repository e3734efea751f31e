#pragma once

#include <schrodnet/types.hpp>

namespace schrodnet {

/// Delaunay triangulation of a small planar point set (Bowyer-Watson).
/// Near-cocircular configurations are resolved deterministically; any
/// valid triangulation of such a ring is acceptable for interpolation.
struct Triangulation {
  Points2 points;
  std::vector<std::array<int, 3>> triangles;
};

Triangulation delaunay_triangulate(const Points2& points);

/// Piecewise-linear interpolation of nodal values over the
/// triangulation; points outside the convex hull take the value of the
/// nearest node.
double interpolate(const Triangulation& tri, const Vector& values, double x,
                   double y);

}  // namespace schrodnet
