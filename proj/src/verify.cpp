#include "plb/verify.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "plb/curves.hpp"
#include "plb/quadrature.hpp"

namespace plb {

namespace {

template <class F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InfeasibleError& e) {
    throw InfeasibleError(e.constraint(), std::string("stage ") + stage);
  } catch (const VerificationError&) {
    throw;
  } catch (const std::exception& e) {
    throw VerificationError(stage, e.what());
  }
}

double domain_area(const DomainSource& d) {
  if (const auto* c = std::get_if<ConformalDomain>(&d)) {
    return c->known_area() ? *c->known_area() : area(*c).value;
  }
  if (const auto* s = std::get_if<SnowflakeParams>(&d)) {
    return std::abs(polygon_area(generate_rohde_snowflake(*s)));
  }
  return std::abs(polygon_area(std::get<PolygonalCurve>(d)));
}

const ConformalDomain& require_conformal(const DomainSource& d, const char* route) {
  const auto* c = std::get_if<ConformalDomain>(&d);
  if (!c) throw ParameterError(std::string(route) + " needs a conformal domain");
  return *c;
}

BoundReport route_bound(const VerifyRequest& r) {
  switch (r.route) {
    case VerifyRoute::corollary_34:
    case VerifyRoute::szego_weinberger: {
      const ConformalDomain& c = require_conformal(r.domain, "corollary_34");
      return theorem_b_bound(r.p, Alpha::infinity(), domain_area(r.domain), sup_norm(c).value);
    }
    case VerifyRoute::theorem_b: {
      const ConformalDomain& c = require_conformal(r.domain, "theorem_B");
      const double alpha = r.alpha.value_or(4.0);
      return theorem_b_bound(r.p, Alpha::from_value(alpha), domain_area(r.domain), lalpha_norm(c, alpha).value);
    }
    case VerifyRoute::theorem_a: {
      QuasidiscSpec spec;
      if (r.beta) {
        spec = make_star_spec(*r.beta, domain_area(r.domain));
      } else if (r.k) {
        spec = make_direct_spec(*r.k, domain_area(r.domain));
      } else {
        throw ParameterError("theorem_A needs K or beta");
      }
      return theorem_a_bound(r.p, spec);
    }
    case VerifyRoute::theorem_c: {
      const PolygonalCurve curve = source_curve(r.domain, r.h);
      return theorem_c_bound(r.p, std::max(1.0, ahlfors_constant(curve)), domain_area(r.domain));
    }
    case VerifyRoute::snowflake: {
      const auto* s = std::get_if<SnowflakeParams>(&r.domain);
      if (!s) throw ParameterError("snowflake route needs a snowflake domain");
      return snowflake_bound(r.p, s->t, domain_area(r.domain));
    }
  }
  throw ParameterError("unknown route");
}

}  // namespace

std::string verify_route_name(VerifyRoute r) {
  switch (r) {
    case VerifyRoute::theorem_b: return "theorem_B";
    case VerifyRoute::corollary_34: return "corollary_34";
    case VerifyRoute::theorem_a: return "theorem_A";
    case VerifyRoute::theorem_c: return "theorem_C";
    case VerifyRoute::snowflake: return "snowflake";
    case VerifyRoute::szego_weinberger: return "szego_weinberger";
  }
  return "?";
}

VerifyRoute verify_route_from_name(const std::string& name) {
  if (name == "B" || name == "theorem_B") return VerifyRoute::theorem_b;
  if (name == "corollary" || name == "corollary_34" || name == "Binf") return VerifyRoute::corollary_34;
  if (name == "A" || name == "theorem_A") return VerifyRoute::theorem_a;
  if (name == "C" || name == "theorem_C") return VerifyRoute::theorem_c;
  if (name == "snowflake") return VerifyRoute::snowflake;
  if (name == "SW" || name == "szego_weinberger") return VerifyRoute::szego_weinberger;
  throw ParameterError("unknown route '" + name + "'");
}

PolygonalCurve source_curve(const DomainSource& domain, double h) {
  if (const auto* c = std::get_if<ConformalDomain>(&domain)) return boundary_polyline_arclength(*c, h);
  if (const auto* s = std::get_if<SnowflakeParams>(&domain)) return generate_rohde_snowflake(*s);
  return std::get<PolygonalCurve>(domain);
}

VerificationReport verify_bound(const VerifyRequest& request) {
  if (!(request.h > 0.0)) throw ParameterError("verify: h must be positive");
  if (request.route == VerifyRoute::szego_weinberger && request.p != 2.0) {
    throw ParameterError("verify: the Szegoe-Weinberger sandwich needs p = 2");
  }
  VerificationReport out;
  out.label = request.label;
  out.route = request.route;
  out.p = request.p;
  out.h = request.h;

  if (request.route != VerifyRoute::szego_weinberger || std::holds_alternative<ConformalDomain>(request.domain)) {
    out.bound = staged("bound", [&] { return route_bound(request); });
    out.mu_lower = out.bound->mu_lower;
  } else {
    out.mu_lower = Magnitude::from_log(-std::numeric_limits<double>::infinity());
  }
  if (request.route == VerifyRoute::szego_weinberger) {
    out.sw_upper = szego_weinberger_upper(domain_area(request.domain));
  }

  const Mesh mesh = staged("mesh", [&] { return triangulate(source_curve(request.domain, request.h), request.h); });
  out.mesh_vertices = mesh.points.size();
  out.mesh_triangles = mesh.triangles.size();
  out.mesh_area = mesh_area(mesh);

  const EigenEstimate est = staged("oracle", [&] { return rayleigh_minimize(mesh, request.p, request.rayleigh); });
  out.mu_oracle = est.mu;
  out.iterations = est.iterations;
  out.residual = est.residual;
  out.constraint_violation = est.constraint_violation;

  const double log_oracle = std::log(est.mu);
  out.margin_log10 = out.mu_lower.is_tower() ? -out.mu_lower.log_sign() * std::numeric_limits<double>::infinity()
                                             : (log_oracle - out.mu_lower.log()) / std::numbers::ln10;
  out.pass = out.mu_lower <= Magnitude::from_log(log_oracle + std::log1p(1e-6));
  if (out.sw_upper) out.pass = out.pass && *out.sw_upper >= est.mu / 1.02;
  return out;
}

}  // namespace plb
