#include "plb/curves.hpp"

#include <algorithm>
#include <cmath>

#include "plb/errors.hpp"

namespace plb {

namespace {

void require_valid(const PolygonalCurve& curve, const char* who) {
  if (!curve.is_simple()) throw ParameterError(std::string(who) + ": curve is not simple");
}

// diam[s * n + i] = diameter of the vertex run i, i+1, ..., i+s (indices mod n).
// Built by the interval recursion diam(i..i+s) = max(diam(i..i+s-1),
// diam(i+1..i+s), |v_i - v_{i+s}|).
std::vector<double> arc_diameter_table(std::span<const Vec2> v) {
  const std::size_t n = v.size();
  std::vector<double> diam(n * n, 0.0);
  for (std::size_t s = 1; s < n; ++s) {
    const double* prev = &diam[(s - 1) * n];
    double* row = &diam[s * n];
    for (std::size_t i = 0; i < n; ++i) {
      const double d = distance(v[i], v[(i + s) % n]);
      row[i] = std::max({prev[i], prev[(i + 1) % n], d});
    }
  }
  return diam;
}

// Same table, filled by extending each run one vertex at a time and scanning
// the whole run for the new farthest partner.
std::vector<double> arc_diameter_table_naive(std::span<const Vec2> v) {
  const std::size_t n = v.size();
  std::vector<double> diam(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double current = 0.0;
    for (std::size_t s = 1; s < n; ++s) {
      const Vec2 end = v[(i + s) % n];
      for (std::size_t k = 0; k < s; ++k) {
        current = std::max(current, distance(v[(i + k) % n], end));
      }
      diam[s * n + i] = current;
    }
  }
  return diam;
}

BoundedTurning bounded_turning_from_table(std::span<const Vec2> v, const std::vector<double>& diam) {
  const std::size_t n = v.size();
  BoundedTurning best;
  best.constant = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t s = j - i;
      const double forward = diam[s * n + i];
      const double backward = diam[(n - s) * n + j];
      const double ratio = std::min(forward, backward) / distance(v[i], v[j]);
      if (ratio > best.constant) {
        best.constant = ratio;
        best.witness = {i, j};
      }
    }
  }
  return best;
}

}  // namespace

BoundedTurning bounded_turning(const PolygonalCurve& curve) {
  require_valid(curve, "bounded_turning");
  return bounded_turning_from_table(curve.vertices(), arc_diameter_table(curve.vertices()));
}

double bounded_turning_constant(const PolygonalCurve& curve) {
  return bounded_turning(curve).constant;
}

BoundedTurning bounded_turning_naive(const PolygonalCurve& curve) {
  require_valid(curve, "bounded_turning_naive");
  return bounded_turning_from_table(curve.vertices(),
                                    arc_diameter_table_naive(curve.vertices()));
}

double ahlfors_constant(const PolygonalCurve& curve) {
  require_valid(curve, "ahlfors_constant");
  const auto v = curve.vertices();
  const std::size_t n = v.size();
  const std::vector<double> diam = arc_diameter_table(v);
  std::vector<double> farthest_fwd(n, 0.0);
  std::vector<double> farthest_bwd(n, 0.0);
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 1; s < n; ++s) {
      farthest_fwd[s] = std::max(farthest_fwd[s - 1], distance(v[i], v[(i + s) % n]));
      farthest_bwd[s] = std::max(farthest_bwd[s - 1], distance(v[i], v[(i + n - s) % n]));
    }
    for (std::size_t s = 1; s < n; ++s) {
      const std::size_t j = (i + s) % n;
      const double forward = diam[s * n + i];
      const double backward = diam[(n - s) * n + j];
      const double d = distance(v[i], v[j]);
      if (forward <= backward) best = std::max(best, farthest_fwd[s] / d);
      if (backward <= forward) best = std::max(best, farthest_bwd[n - s] / d);
    }
  }
  return best;
}

double ahlfors_constant_naive(const PolygonalCurve& curve) {
  require_valid(curve, "ahlfors_constant_naive");
  const auto v = curve.vertices();
  const std::size_t n = v.size();
  const std::vector<double> diam = arc_diameter_table_naive(v);
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 1; s < n; ++s) {
      const std::size_t j = (i + s) % n;
      const double forward = diam[s * n + i];
      const double backward = diam[(n - s) * n + j];
      const double d = distance(v[i], v[j]);
      if (forward <= backward) {
        for (std::size_t k = 0; k <= s; ++k) best = std::max(best, distance(v[i], v[(i + k) % n]) / d);
      }
      if (backward <= forward) {
        for (std::size_t k = 0; k <= n - s; ++k) {
          best = std::max(best, distance(v[i], v[(j + k) % n]) / d);
        }
      }
    }
  }
  return best;
}

double polygon_area(const PolygonalCurve& curve) { return curve.signed_area(); }

std::vector<Vec2> convex_hull(std::span<const Vec2> points) {
  std::vector<Vec2> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  std::vector<Vec2> hull(2 * p.size());
  std::size_t k = 0;
  for (const Vec2& q : p) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], q) <= 0.0) --k;
    hull[k++] = q;
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(hull[k - 2], hull[k - 1], p[i]) <= 0.0) --k;
    hull[k++] = p[i];
  }
  hull.resize(k - 1);
  return hull;
}

double polygon_diameter(std::span<const Vec2> points) {
  const std::vector<Vec2> h = convex_hull(points);
  const std::size_t m = h.size();
  if (m == 1) return 0.0;
  if (m == 2) return distance(h[0], h[1]);
  // Rotating calipers: for each hull edge advance the antipodal vertex while
  // the triangle area keeps growing.
  double best = 0.0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 a = h[i];
    const Vec2 b = h[(i + 1) % m];
    while (std::abs(orient(a, b, h[(j + 1) % m])) > std::abs(orient(a, b, h[j]))) j = (j + 1) % m;
    best = std::max({best, distance(a, h[j]), distance(b, h[j])});
  }
  return best;
}

double polygon_diameter(const PolygonalCurve& curve) { return polygon_diameter(curve.vertices()); }

CurveMetrics curve_metrics(const PolygonalCurve& curve, bool use_oracle) {
  CurveMetrics m;
  const BoundedTurning bt = use_oracle ? bounded_turning_naive(curve) : bounded_turning(curve);
  m.bounded_turning_c = bt.constant;
  m.witness_pair = bt.witness;
  m.ahlfors_c = use_oracle ? ahlfors_constant_naive(curve) : ahlfors_constant(curve);
  m.area = std::abs(polygon_area(curve));
  m.diameter = polygon_diameter(curve);
  m.vertex_count = curve.size();
  return m;
}

}  // namespace plb
