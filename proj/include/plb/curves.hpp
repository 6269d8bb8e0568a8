#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "plb/geometry.hpp"

namespace plb {

/// Vertex-level geometric constants of a Jordan polyline.
struct CurveMetrics {
  double bounded_turning_c = 1.0;
  double ahlfors_c = 1.0;
  double area = 0.0;
  double diameter = 0.0;
  /// Vertex indices (x, y) attaining bounded_turning_c.
  std::pair<std::size_t, std::size_t> witness_pair{0, 0};
  std::size_t vertex_count = 0;
};

struct BoundedTurning {
  double constant = 1.0;
  std::pair<std::size_t, std::size_t> witness{0, 0};
};

/// max over vertex pairs of diam(smaller-diameter subarc) / |x - y|.
/// O(n^2) time via an interval table of subarc diameters.
BoundedTurning bounded_turning(const PolygonalCurve& curve);
double bounded_turning_constant(const PolygonalCurve& curve);

/// Straightforward O(n^3) evaluation of the same quantity; used as oracle.
BoundedTurning bounded_turning_naive(const PolygonalCurve& curve);

/// Ahlfors three-point constant: max |z3 - z1| / |z2 - z1| with z3 on the
/// smaller-diameter subarc between z1 and z2. O(n^2).
double ahlfors_constant(const PolygonalCurve& curve);
/// O(n^3) oracle for ahlfors_constant.
double ahlfors_constant_naive(const PolygonalCurve& curve);

/// Shoelace area (positive for counterclockwise curves).
double polygon_area(const PolygonalCurve& curve);

/// Maximum pairwise vertex distance, by rotating calipers on the convex hull.
double polygon_diameter(std::span<const Vec2> points);
double polygon_diameter(const PolygonalCurve& curve);

/// Counterclockwise convex hull (Andrew's monotone chain), collinear points dropped.
std::vector<Vec2> convex_hull(std::span<const Vec2> points);

/// All metrics; `use_oracle` switches both constants to the O(n^3) routines.
CurveMetrics curve_metrics(const PolygonalCurve& curve, bool use_oracle = false);

}  // namespace plb
