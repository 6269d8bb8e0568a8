#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "plb/curves.hpp"
#include "plb/domains.hpp"
#include "plb/errors.hpp"

using namespace plb;

namespace {

std::vector<Vec2> as_vector(const PolygonalCurve& c) { return {c.vertices().begin(), c.vertices().end()}; }

PolygonalCurve regular(int n, double r = 1.0) {
  std::vector<Vec2> v;
  for (int k = 0; k < n; ++k) v.push_back({r * std::cos(2.0 * std::numbers::pi * k / n), r * std::sin(2.0 * std::numbers::pi * k / n)});
  return PolygonalCurve(v);
}

}  // namespace

TEST_SUITE("curves") {

TEST_CASE("bounded turning matches the definition on small curves") {
  const PolygonalCurve square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(bounded_turning_constant(square) == oracle::brute_bounded_turning(as_vector(square)));
  CHECK(bounded_turning_constant(square) == doctest::Approx(1.0));
  for (const PolygonalCurve& c : {regular(7), regular(16), generate_rohde_snowflake({0.3, 2, {}}),
                                  boundary_polyline(make_epicycloid(4), 32)}) {
    CHECK(bounded_turning(c).constant == oracle::brute_bounded_turning(as_vector(c)));
    CHECK(bounded_turning(c).constant == bounded_turning_naive(c).constant);
    CHECK(ahlfors_constant(c) == ahlfors_constant_naive(c));
  }
}

TEST_CASE("witness pair attains the constant") {
  const PolygonalCurve c = generate_rohde_snowflake({0.35, 3, {}});
  const BoundedTurning bt = bounded_turning(c);
  CHECK(bt.witness.first != bt.witness.second);
  CHECK(bt.constant >= 1.0);
}

TEST_CASE("regular polygon constants") {
  // On a convex polygon the Ahlfors and bounded-turning constants stay below
  // the diameter over the shortest chord.
  for (int n : {4, 8, 32}) {
    const PolygonalCurve c = regular(n);
    const double chord = 2.0 * std::sin(std::numbers::pi / n);
    const double diam = polygon_diameter(c);
    CHECK(bounded_turning_constant(c) <= diam / chord + 1e-12);
    CHECK(ahlfors_constant(c) >= 1.0);
  }
}

TEST_CASE("diameter by rotating calipers equals all-pairs maximum") {
  std::mt19937 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec2> pts;
    const int n = 3 + trial * 4;
    for (int i = 0; i < n; ++i) pts.push_back({g(rng), 0.3 * g(rng)});
    CHECK(polygon_diameter(pts) == oracle::brute_diameter(pts));
  }
  // Collinear and repeated points.
  std::vector<Vec2> line{{0, 0}, {1, 1}, {2, 2}, {1, 1}, {3, 3}};
  CHECK(polygon_diameter(line) == doctest::Approx(3.0 * std::sqrt(2.0)));
}

TEST_CASE("convex hull is counterclockwise and drops interior and collinear points") {
  std::vector<Vec2> pts{{0, 0}, {2, 0}, {1, 0}, {2, 2}, {0, 2}, {1, 1}, {0, 1}};
  const std::vector<Vec2> hull = convex_hull(pts);
  CHECK(hull.size() == 4);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    CHECK(orient(hull[i], hull[(i + 1) % hull.size()], hull[(i + 2) % hull.size()]) > 0.0);
  }
}

TEST_CASE("area and metrics bundle") {
  const PolygonalCurve c = generate_rohde_snowflake({0.3, 3, {}});
  const CurveMetrics m = curve_metrics(c);
  const CurveMetrics o = curve_metrics(c, true);
  CHECK(m.bounded_turning_c == o.bounded_turning_c);
  CHECK(m.ahlfors_c == o.ahlfors_c);
  CHECK(m.vertex_count == 64);
  CHECK(m.area == doctest::Approx(polygon_area(c)));
  CHECK(polygon_area(c.reversed()) == doctest::Approx(-polygon_area(c)));
  CHECK_FALSE(is_simple_polygon(std::vector<Vec2>{{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
}

}
