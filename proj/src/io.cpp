#include "plb/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "plb/errors.hpp"

namespace plb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Json real(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double real_from(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ParameterError("json: expected a number, got '" + s + "'");
  }
  return j.get<double>();
}

template <class T, class F>
Json optional(const std::optional<T>& v, F&& f) {
  return v ? f(*v) : Json(nullptr);
}

template <class T, class F>
std::optional<T> optional_from(const Json& j, const char* key, F&& f) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return f(j.at(key));
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const Magnitude& m) {
  Json j;
  if (m.is_tower()) {
    j["log10"] = real(m.log10());
    j["tower"] = true;
    j["ln_abs_ln"] = real(m.log_abs_log());
    j["ln_sign"] = m.log_sign();
    j["log10_abs_log10"] = real((m.log_abs_log() - std::log(std::numbers::ln10)) / std::numbers::ln10);
  } else {
    j["log10"] = real(m.log10());
    j["ln"] = real(m.log());
    if (auto v = m.linear()) j["value"] = *v;
  }
  return j;
}

Magnitude magnitude_from_json(const Json& j) {
  if (j.value("tower", false)) return Magnitude::from_log_log(real_from(j.at("ln_abs_ln")), j.at("ln_sign").get<int>());
  return Magnitude::from_log(real_from(j.at("ln")));
}

Json to_json(const Alpha& a) {
  return Json{{"value", real(a.is_infinite() ? kInf : a.value())}, {"ln_excess", real(a.log_excess())}};
}

Alpha alpha_from_json(const Json& j) { return Alpha::from_log_excess(real_from(j.at("ln_excess"))); }

Json to_json(const BoundReport& r) {
  Json j;
  j["route"] = route_name(r.route);
  j["paper_route"] = r.paper_route;
  j["feasible"] = r.feasible;
  j["infeasible_constraint"] = r.infeasible_constraint;
  j["p"] = real(r.p);
  j["mu_lower"] = to_json(r.mu_lower);
  j["chosen_alpha"] = to_json(r.chosen_alpha);
  j["chosen_q"] = real(r.chosen_q);
  j["delta"] = real(r.delta);
  j["area"] = real(r.area);
  j["R_star"] = real(r.r_star);
  j["M_p"] = to_json(r.m_p);
  j["M_p_star"] = to_json(r.m_p_star);
  auto mag = [](const Magnitude& m) { return to_json(m); };
  auto num = [](double x) { return real(x); };
  j["C_p"] = optional(r.c_p, mag);
  j["phi_alpha_norm"] = optional(r.phi_alpha_norm, num);
  j["ln_K"] = optional(r.log_k, num);
  j["C_alpha"] = optional(r.log_c_alpha, [](double x) { return to_json(Magnitude::from_log(x)); });
  j["nu_at_alpha"] = optional(r.log_nu_at_alpha, [](double x) { return to_json(Magnitude::from_log(x)); });
  j["gamma_star"] = optional(r.gamma_star, [](const Alpha& a) { return to_json(a); });
  j["alpha_star"] = optional(r.alpha_star, [](const Alpha& a) { return to_json(a); });
  j["alpha_star_discrepancy"] = r.alpha_star_discrepancy;
  j["ahlfors_C"] = optional(r.ahlfors_c, num);
  j["t"] = optional(r.snowflake_t, num);
  j["beta"] = optional(r.beta, num);
  return j;
}

BoundReport bound_report_from_json(const Json& j) {
  BoundReport r;
  r.route = route_from_name(j.at("route").get<std::string>());
  r.paper_route = j.at("paper_route").get<std::string>();
  r.feasible = j.at("feasible").get<bool>();
  r.infeasible_constraint = j.at("infeasible_constraint").get<std::string>();
  r.p = real_from(j.at("p"));
  r.mu_lower = magnitude_from_json(j.at("mu_lower"));
  r.chosen_alpha = alpha_from_json(j.at("chosen_alpha"));
  r.chosen_q = real_from(j.at("chosen_q"));
  r.delta = real_from(j.at("delta"));
  r.area = real_from(j.at("area"));
  r.r_star = real_from(j.at("R_star"));
  r.m_p = magnitude_from_json(j.at("M_p"));
  r.m_p_star = magnitude_from_json(j.at("M_p_star"));
  r.c_p = optional_from<Magnitude>(j, "C_p", magnitude_from_json);
  r.phi_alpha_norm = optional_from<double>(j, "phi_alpha_norm", real_from);
  r.log_k = optional_from<double>(j, "ln_K", real_from);
  r.log_c_alpha = optional_from<double>(j, "C_alpha", [](const Json& x) { return real_from(x.at("ln")); });
  r.log_nu_at_alpha = optional_from<double>(j, "nu_at_alpha", [](const Json& x) { return real_from(x.at("ln")); });
  r.gamma_star = optional_from<Alpha>(j, "gamma_star", alpha_from_json);
  r.alpha_star = optional_from<Alpha>(j, "alpha_star", alpha_from_json);
  r.alpha_star_discrepancy = j.at("alpha_star_discrepancy").get<bool>();
  r.ahlfors_c = optional_from<double>(j, "ahlfors_C", real_from);
  r.snowflake_t = optional_from<double>(j, "t", real_from);
  r.beta = optional_from<double>(j, "beta", real_from);
  return r;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["label"] = r.label;
  j["route"] = verify_route_name(r.route);
  j["p"] = real(r.p);
  j["h"] = real(r.h);
  j["bound"] = optional(r.bound, [](const BoundReport& b) { return to_json(b); });
  j["mu_lower"] = to_json(r.mu_lower);
  j["mu_oracle"] = real(r.mu_oracle);
  j["margin_log10"] = real(r.margin_log10);
  j["pass"] = r.pass;
  j["sw_upper"] = optional(r.sw_upper, [](double x) { return real(x); });
  j["mesh"] = Json{{"vertices", r.mesh_vertices}, {"triangles", r.mesh_triangles}, {"area", real(r.mesh_area)}};
  j["oracle"] = Json{{"iterations", r.iterations},
                     {"residual", real(r.residual)},
                     {"constraint_violation", real(r.constraint_violation)}};
  return j;
}

VerificationReport verification_report_from_json(const Json& j) {
  VerificationReport r;
  r.label = j.at("label").get<std::string>();
  r.route = verify_route_from_name(j.at("route").get<std::string>());
  r.p = real_from(j.at("p"));
  r.h = real_from(j.at("h"));
  r.bound = optional_from<BoundReport>(j, "bound", bound_report_from_json);
  r.mu_lower = magnitude_from_json(j.at("mu_lower"));
  r.mu_oracle = real_from(j.at("mu_oracle"));
  r.margin_log10 = real_from(j.at("margin_log10"));
  r.pass = j.at("pass").get<bool>();
  r.sw_upper = optional_from<double>(j, "sw_upper", real_from);
  r.mesh_vertices = j.at("mesh").at("vertices").get<std::size_t>();
  r.mesh_triangles = j.at("mesh").at("triangles").get<std::size_t>();
  r.mesh_area = real_from(j.at("mesh").at("area"));
  r.iterations = j.at("oracle").at("iterations").get<int>();
  r.residual = real_from(j.at("oracle").at("residual"));
  r.constraint_violation = real_from(j.at("oracle").at("constraint_violation"));
  return r;
}

Json to_json(const CurveMetrics& m) {
  return Json{{"bounded_turning_C", real(m.bounded_turning_c)},
              {"ahlfors_C", real(m.ahlfors_c)},
              {"area", real(m.area)},
              {"diameter", real(m.diameter)},
              {"witness_pair", {m.witness_pair.first, m.witness_pair.second}},
              {"vertex_count", m.vertex_count}};
}

Json to_json(const NormEstimate& e) {
  return Json{{"value", real(e.value)},
              {"coarse_value", real(e.coarse_value)},
              {"refinements", e.refinements},
              {"radial_nodes", e.radial_nodes},
              {"angular_nodes", e.angular_nodes},
              {"sampled_sup", e.sampled_sup}};
}

void write_curve_csv(std::ostream& os, const PolygonalCurve& curve) {
  os << "x,y\n";
  for (Vec2 v : curve.vertices()) os << format_real(v.x) << ',' << format_real(v.y) << '\n';
}

PolygonalCurve read_curve_csv(std::istream& is) {
  std::vector<Vec2> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && (line == "x,y" || line == "x, y")) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParameterError("curve csv line " + std::to_string(lineno) + ": expected x,y");
    try {
      pts.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    } catch (const std::logic_error&) {
      throw ParameterError("curve csv line " + std::to_string(lineno) + ": not a number");
    }
  }
  return PolygonalCurve(std::move(pts));
}

void write_curve_svg(std::ostream& os, const PolygonalCurve& curve) {
  double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
  for (Vec2 v : curve.vertices()) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, -v.y);
    ymax = std::max(ymax, -v.y);
  }
  const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);
  const double w = xmax - xmin + 2.0 * pad;
  const double h = ymax - ymin + 2.0 * pad;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_real(xmin - pad) << ' '
     << format_real(ymin - pad) << ' ' << format_real(w) << ' ' << format_real(h) << "\">\n"
     << "<polygon fill=\"#dde6f0\" stroke=\"#1f3b5a\" stroke-width=\"" << format_real(0.002 * std::max(w, h))
     << "\" points=\"";
  bool first = true;
  for (Vec2 v : curve.vertices()) {
    if (!first) os << ' ';
    first = false;
    os << format_real(v.x) << ',' << format_real(-v.y);
  }
  os << "\"/>\n</svg>\n";
}

void write_mesh_off(std::ostream& os, const Mesh& mesh) {
  os << "OFF\n" << mesh.points.size() << ' ' << mesh.triangles.size() << " 0\n";
  for (Vec2 v : mesh.points) os << format_real(v.x) << ' ' << format_real(v.y) << " 0\n";
  for (const auto& t : mesh.triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

Mesh read_mesh_off(std::istream& is) {
  std::string magic;
  is >> magic;
  if (magic != "OFF") throw ParameterError("off: missing OFF header");
  std::size_t nv = 0, nf = 0, ne = 0;
  is >> nv >> nf >> ne;
  Mesh mesh;
  for (std::size_t i = 0; i < nv; ++i) {
    double x, y, z;
    is >> x >> y >> z;
    mesh.points.push_back({x, y});
  }
  std::map<std::pair<int, int>, int> edges;
  for (std::size_t i = 0; i < nf; ++i) {
    int k;
    std::array<int, 3> t{};
    is >> k >> t[0] >> t[1] >> t[2];
    if (k != 3) throw ParameterError("off: only triangles are supported");
    mesh.triangles.push_back(t);
    for (int e = 0; e < 3; ++e) ++edges[{std::min(t[e], t[(e + 1) % 3]), std::max(t[e], t[(e + 1) % 3])}];
  }
  if (!is) throw ParameterError("off: truncated input");
  mesh.boundary_flags.assign(nv, false);
  for (const auto& [e, count] : edges) {
    if (count == 1) {
      mesh.boundary_flags[static_cast<std::size_t>(e.first)] = true;
      mesh.boundary_flags[static_cast<std::size_t>(e.second)] = true;
    }
  }
  return mesh;
}

}  // namespace plb
