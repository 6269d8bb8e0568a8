#pragma once

#include <optional>
#include <string>
#include <variant>

#include "plb/bounds.hpp"
#include "plb/domains.hpp"
#include "plb/eigensolver.hpp"

namespace plb {

/// A domain to verify: a conformal image of the disc, a Rohde snowflake
/// stage, or an arbitrary simple polygon.
using DomainSource = std::variant<SnowflakeParams, ConformalDomain, PolygonalCurve>;

enum class VerifyRoute { theorem_b, corollary_34, theorem_a, theorem_c, snowflake, szego_weinberger };

std::string verify_route_name(VerifyRoute r);
VerifyRoute verify_route_from_name(const std::string& name);

struct VerifyRequest {
  DomainSource domain;
  std::string label;
  double p = 3.0;
  VerifyRoute route = VerifyRoute::corollary_34;
  double h = 0.05;
  /// Exponent for the theorem_b route (default 4).
  std::optional<double> alpha;
  /// Quasiconformality coefficient for theorem_a; alternatively `beta`
  /// (star-shaped, K = cot^2((1 - beta) pi / 4)).
  std::optional<double> k;
  std::optional<double> beta;
  RayleighOptions rayleigh;
};

struct VerificationReport {
  std::string label;
  VerifyRoute route = VerifyRoute::corollary_34;
  double p = 0.0;
  double h = 0.0;
  std::optional<BoundReport> bound;
  Magnitude mu_lower;
  double mu_oracle = 0.0;
  /// log10(mu_oracle / mu_lower); +inf when mu_lower is below double range.
  double margin_log10 = 0.0;
  bool pass = false;
  /// Szegoe-Weinberger upper estimate (p = 2 sandwich route only).
  std::optional<double> sw_upper;
  std::size_t mesh_vertices = 0;
  std::size_t mesh_triangles = 0;
  double mesh_area = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double constraint_violation = 0.0;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// A stage (bound, mesh, oracle) failed for a reason other than infeasibility.
class VerificationError : public Error {
 public:
  VerificationError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Boundary polyline used for meshing the domain.
PolygonalCurve source_curve(const DomainSource& domain, double h);

/// Bound from the requested route, FEM oracle on a mesh of size h, and the
/// comparison mu_lower <= mu_oracle (1 + 1e-6). Infeasibility propagates as
/// InfeasibleError; other failures as VerificationError tagged with the stage.
VerificationReport verify_bound(const VerifyRequest& request);

}  // namespace plb
