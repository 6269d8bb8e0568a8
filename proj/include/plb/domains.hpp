#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "plb/geometry.hpp"

namespace plb {

using Complex = std::complex<double>;
using ComplexMap = std::function<Complex(Complex)>;

/// Simply connected domain given by a conformal map phi from the unit disc,
/// with phi(0) as interior basepoint, together with its complex derivative.
class ConformalDomain {
 public:
  ConformalDomain(std::string label, ComplexMap map, ComplexMap derivative,
                  std::optional<double> known_area = std::nullopt,
                  std::optional<double> known_sup_derivative = std::nullopt);

  Complex map(Complex z) const { return map_(z); }
  Complex derivative(Complex z) const { return derivative_(z); }
  const std::string& label() const noexcept { return label_; }
  std::optional<double> known_area() const noexcept { return known_area_; }
  /// ||phi'||_{L_inf(D)} when known in closed form.
  std::optional<double> known_sup_derivative() const noexcept { return known_sup_derivative_; }

 private:
  std::string label_;
  ComplexMap map_;
  ComplexMap derivative_;
  std::optional<double> known_area_;
  std::optional<double> known_sup_derivative_;
};

ConformalDomain make_unit_disc();

/// phi(z) = z + z^n / n: the domain bounded by an epicycloid with n-1 cusps.
ConformalDomain make_epicycloid(int n);

/// Where a quasiconformality coefficient came from.
struct Provenance {
  enum class Kind { direct, star, spiral, ahlfors, snowflake };
  Kind kind = Kind::direct;
  double beta = 0.0;
  double gamma = 0.0;
  double ahlfors_c = 0.0;
  double t = 0.0;
};

/// A K-quasidisc known only through K and its area. K is stored as ln K
/// because the Ahlfors and snowflake routes produce K far beyond double range.
struct QuasidiscSpec {
  double log_k = 0.0;
  double area = 0.0;
  Provenance provenance;

  double k() const { return std::exp(log_k); }
};

QuasidiscSpec make_direct_spec(double k, double area);

/// beta-star-shaped domain: K = cot^2((1 - beta) pi / 4), 0 <= beta < 1.
QuasidiscSpec make_star_spec(double beta, double area);

/// beta-spiral-shaped domain; same K as the star-shaped case, |gamma| < beta pi / 2.
QuasidiscSpec make_spiral_spec(double beta, double gamma, double area);

/// cot^2((1 - beta) pi / 4).
double star_quasiconformality(double beta);

struct SnowflakeChoices {
  enum class Kind { all_flat, all_tent, seeded_random, explicit_bits };
  Kind kind = Kind::all_tent;
  std::uint64_t seed = 0;
  /// '0' = flat, '1' = tent, consumed edge by edge, stage by stage.
  std::string bits;
};

struct SnowflakeParams {
  double t = 0.3;
  int depth = 1;
  SnowflakeChoices choices;
};

/// Rohde snowflake stage S^depth, starting from the unit square S^1.
/// Throws ConstructionError when the result is not a simple curve.
PolygonalCurve generate_rohde_snowflake(const SnowflakeParams& params);

/// Vertices phi(exp(2 pi i k / m)), k = 0..m-1; requires m >= 16.
PolygonalCurve boundary_polyline(const ConformalDomain& domain, int m);

/// Boundary sampled at (nearly) equal arclength with spacing <= `spacing`.
/// Used for meshing, where uniform-angle samples bunch up near cusps.
PolygonalCurve boundary_polyline_arclength(const ConformalDomain& domain, double spacing);

}  // namespace plb
