#include "plb/geometry.hpp"

#include <algorithm>

#include "plb/errors.hpp"
#include "plb/summation.hpp"

namespace plb {

namespace {

int sign_of(double v) { return (v > 0) - (v < 0); }

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = sign_of(orient(a, b, c));
  const int o2 = sign_of(orient(a, b, d));
  const int o3 = sign_of(orient(c, d, a));
  const int o4 = sign_of(orient(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool is_simple_polygon(std::span<const Vec2> v) {
  const std::size_t n = v.size();
  if (n < 3) return false;
  struct Box {
    double x0, x1, y0, y1;
  };
  std::vector<Box> boxes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[i];
    const Vec2 b = v[(i + 1) % n];
    boxes[i] = {std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y)};
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[i];
    const Vec2 b = v[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2 c = v[j];
      const Vec2 d = v[(j + 1) % n];
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges share one vertex; they must not fold back onto each other.
        const Vec2 shared = (j == i + 1) ? b : a;
        const Vec2 p = (j == i + 1) ? a : b;
        const Vec2 q = (j == i + 1) ? d : c;
        if (orient(shared, p, q) == 0.0 && dot(p - shared, q - shared) > 0.0) return false;
        continue;
      }
      const Box& bi = boxes[i];
      const Box& bj = boxes[j];
      if (bi.x1 < bj.x0 || bj.x1 < bi.x0 || bi.y1 < bj.y0 || bj.y1 < bi.y0) continue;
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

PolygonalCurve::PolygonalCurve(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) throw ParameterError("PolygonalCurve: at least 3 vertices required");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] == vertices_[(i + 1) % vertices_.size()]) {
      throw ParameterError("PolygonalCurve: consecutive vertices " + std::to_string(i) +
                           " coincide");
    }
  }
  is_simple_ = is_simple_polygon(vertices_);
}

const Vec2& PolygonalCurve::at_cyclic(std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
  return vertices_[static_cast<std::size_t>(((i % n) + n) % n)];
}

double PolygonalCurve::signed_area() const {
  CompensatedSum s;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 b = vertices_[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s.value();
}

PolygonalCurve PolygonalCurve::reversed() const {
  std::vector<Vec2> r(vertices_.rbegin(), vertices_.rend());
  return PolygonalCurve(std::move(r));
}

}  // namespace plb
