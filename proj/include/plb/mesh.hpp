#pragma once

#include <array>
#include <vector>

#include "plb/geometry.hpp"

namespace plb {

/// Counterclockwise triangle mesh of a polygonal region.
struct Mesh {
  std::vector<Vec2> points;
  std::vector<std::array<int, 3>> triangles;
  std::vector<bool> boundary_flags;
};

/// Minimum interior angle guaranteed by triangulate, in degrees.
constexpr double kMinAngleDegrees = 20.0;
/// Edges never exceed this multiple of the target length h.
constexpr double kMaxEdgeFactor = 1.5;

/// Conforming Delaunay triangulation of the region bounded by `curve`
/// (Delaunay refinement: boundary edges split to length <= h, encroached
/// boundary pieces split at midpoints, skinny or large triangles removed by
/// circumcenter insertion). A non-simple curve or h <= 0 is a ParameterError;
/// refinement failures throw MeshingError naming the offending region.
Mesh triangulate(const PolygonalCurve& curve, double h);

double triangle_area(const Mesh& mesh, std::size_t t);
double mesh_area(const Mesh& mesh);
double min_angle_degrees(const Mesh& mesh);
double max_edge_length(const Mesh& mesh);

/// Checks positive orientation, that every vertex is used, and that every
/// edge borders one (boundary) or two (interior) triangles. Throws MeshingError.
void validate_mesh(const Mesh& mesh);

}  // namespace plb
