#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace plb {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Twice the signed area of triangle (a, b, c); positive when counterclockwise.
constexpr double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

/// True when closed segments [a,b] and [c,d] share a point.
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// Closed Jordan polyline; the last vertex connects back to the first.
class PolygonalCurve {
 public:
  /// Throws ParameterError on fewer than 3 vertices or repeated consecutive
  /// vertices. Simplicity is checked (O(n^2)) and recorded, not enforced.
  explicit PolygonalCurve(std::vector<Vec2> vertices);

  std::span<const Vec2> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const Vec2& operator[](std::size_t i) const { return vertices_[i]; }
  /// Vertex index modulo size().
  const Vec2& at_cyclic(std::ptrdiff_t i) const;
  bool is_simple() const noexcept { return is_simple_; }

  /// Shoelace area, positive for counterclockwise curves.
  double signed_area() const;
  PolygonalCurve reversed() const;

 private:
  std::vector<Vec2> vertices_;
  bool is_simple_ = false;
};

/// O(n^2) test for pairwise intersections of non-adjacent edges.
bool is_simple_polygon(std::span<const Vec2> vertices);

}  // namespace plb
