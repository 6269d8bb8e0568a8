#include "plb/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "plb/curves.hpp"
#include "plb/io.hpp"
#include "plb/quadrature.hpp"

namespace plb {

namespace {

double parse_real(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw ParameterError(std::string(what) + ": '" + s + "' is not a number");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  return parts;
}

PolygonalCurve regular_polygon(int n) {
  std::vector<Vec2> v;
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * std::numbers::pi * k / n;
    v.push_back({std::cos(a), std::sin(a)});
  }
  return PolygonalCurve(std::move(v));
}

int parse_int(const std::string& s, const char* what) {
  const double v = parse_real(s, what);
  if (v != std::floor(v)) throw ParameterError(std::string(what) + " must be an integer");
  return static_cast<int>(v);
}

// Drops linear values from magnitudes so reports stay in log space.
void strip_linear(Json& j) {
  if (j.is_object()) {
    if (j.contains("log10") && j.contains("value")) j.erase("value");
    for (auto& [k, v] : j.items()) strip_linear(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_linear(v);
  }
}

bool quiet() {
  const char* q = std::getenv("PLB_QUIET");
  return q && std::string(q) == "1";
}

struct Emitter {
  std::ostream& out;
  std::string path;

  void emit(const std::string& text) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParameterError("cannot open output file '" + path + "'");
    f << text;
  }
};

std::string canonical_route(const std::string& flag) {
  static const std::map<std::string, Route> routes{{"B", Route::theorem_b}, {"corollary", Route::corollary_34},
                                                   {"A", Route::theorem_a}, {"C", Route::theorem_c},
                                                   {"snowflake", Route::snowflake}};
  const auto it = routes.find(flag);
  return it == routes.end() ? flag : route_name(it->second);
}

Json infeasible_report(const std::string& route, const InfeasibleError& e) {
  return Json{{"route", route}, {"feasible", false}, {"infeasible_constraint", e.constraint()}, {"message", e.what()}};
}

}  // namespace

ParsedDomain parse_domain(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw ParameterError("empty domain spec");
  const std::string& kind = parts[0];
  if (kind == "disc" && parts.size() == 1) return {make_unit_disc(), "disc"};
  if (kind == "square" && parts.size() == 1) {
    return {PolygonalCurve({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}), "square"};
  }
  if (kind == "polygon" && parts.size() == 2) {
    const int n = parse_int(parts[1], "polygon vertex count");
    if (n < 3) throw ParameterError("polygon needs at least 3 vertices");
    return {regular_polygon(n), spec};
  }
  if (kind == "epicycloid" && parts.size() == 2) return {make_epicycloid(parse_int(parts[1], "epicycloid n")), spec};
  if (kind == "csv" && parts.size() >= 2) {
    const std::string path = spec.substr(4);
    std::ifstream f(path);
    if (!f) throw ParameterError("cannot open curve file '" + path + "'");
    return {read_curve_csv(f), spec};
  }
  if (kind == "snowflake" && (parts.size() == 3 || parts.size() == 4)) {
    SnowflakeParams sp;
    sp.t = parse_real(parts[1], "snowflake t");
    sp.depth = parse_int(parts[2], "snowflake depth");
    if (parts.size() == 4) {
      const std::string& c = parts[3];
      if (c == "flat") {
        sp.choices.kind = SnowflakeChoices::Kind::all_flat;
      } else if (c == "tent") {
        sp.choices.kind = SnowflakeChoices::Kind::all_tent;
      } else if (c.rfind("seed=", 0) == 0) {
        sp.choices.kind = SnowflakeChoices::Kind::seeded_random;
        sp.choices.seed = std::stoull(c.substr(5));
      } else if (c.rfind("bits=", 0) == 0) {
        sp.choices.kind = SnowflakeChoices::Kind::explicit_bits;
        sp.choices.bits = c.substr(5);
      } else {
        throw ParameterError("unknown snowflake choice '" + c + "'");
      }
    }
    return {sp, spec};
  }
  throw ParameterError("unrecognized domain spec '" + spec + "'");
}

std::vector<double> parse_range(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() == 1) return {parse_real(parts[0], "range")};
  if (parts.size() != 3) throw ParameterError("range must be a:b:step");
  const double a = parse_real(parts[0], "range start");
  const double b = parse_real(parts[1], "range end");
  const double step = parse_real(parts[2], "range step");
  if (!(step > 0.0) || !(b >= a)) throw ParameterError("range needs step > 0 and end >= start");
  std::vector<double> out;
  for (long k = 0;; ++k) {
    const double x = a + static_cast<double>(k) * step;
    if (x > b + 1e-9 * step) break;
    out.push_back(x);
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit lower bounds for Neumann eigenvalues of the p-Laplacian", "plbounds"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");
  std::string output;
  app.add_option("-o,--output", output, "Write the artifact to this file");

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate one lower-bound route");
  std::string route;
  double p = 0.0;
  std::string alpha = "inf";
  std::optional<double> k_opt, beta_opt, gamma_opt, c_opt, t_opt, area_opt, phi_opt;
  std::string domain_spec;
  bool log_only = false;
  bound->add_option("--route", route, "B | corollary | A | C | snowflake")->required();
  bound->add_option("--p", p, "Exponent p")->required();
  bound->add_option("--alpha", alpha, "Integrability exponent (B route), number or inf");
  bound->add_option("--K", k_opt, "Quasiconformality coefficient (A route)");
  bound->add_option("--beta", beta_opt, "Star/spiral parameter (A route)");
  bound->add_option("--gamma", gamma_opt, "Spiral angle (A route, with --beta)");
  bound->add_option("--C", c_opt, "Ahlfors constant (C route)");
  bound->add_option("--t", t_opt, "Snowflake parameter");
  bound->add_option("--area", area_opt, "Domain area");
  bound->add_option("--phi-norm", phi_opt, "||phi'|| in L_alpha (B route)");
  bound->add_option("--domain", domain_spec, "Domain spec for computed norm, area or C");
  bound->add_flag("--log-only", log_only, "Omit linear values");

  // norms
  auto* norms = app.add_subcommand("norms", "Quadrature norms of phi' for a conformal domain");
  std::vector<std::string> alphas{"2", "4", "inf"};
  std::optional<double> norm_p, norm_q;
  int radial = kDefaultRadialNodes, angular = kDefaultAngularNodes;
  norms->add_option("--domain", domain_spec)->required();
  norms->add_option("--alpha", alphas, "Exponents (repeatable)");
  norms->add_option("--p", norm_p, "Composition-norm p");
  norms->add_option("--q", norm_q, "Composition-norm q");
  norms->add_option("--radial", radial)->check(CLI::Range(4, 1 << 14));
  norms->add_option("--angular", angular)->check(CLI::Range(8, 1 << 16));

  // curve-metrics
  auto* metrics = app.add_subcommand("curve-metrics", "Bounded-turning and Ahlfors constants of a boundary polyline");
  int samples = 512;
  bool oracle = false;
  std::string csv_in;
  auto* metrics_domain = metrics->add_option("--domain", domain_spec);
  auto* metrics_in = metrics->add_option("--in", csv_in, "Vertex CSV (same as --domain csv:PATH)");
  metrics_domain->excludes(metrics_in);
  metrics->add_option("--m", samples, "Boundary samples for conformal domains")->check(CLI::Range(16, 1 << 16));
  metrics->add_flag("--oracle", oracle, "Use the O(n^3) reference algorithms");

  // domain
  auto* domain = app.add_subcommand("domain", "Export a domain boundary (and optionally a mesh)");
  std::string format = "csv";
  std::optional<double> mesh_h;
  std::string off_path, svg_path;
  domain->add_option("--domain", domain_spec)->required();
  domain->add_option("--svg", svg_path, "Also write the boundary as SVG to this file");
  domain->add_option("--format", format)->check(CLI::IsMember({"csv", "svg", "json"}));
  domain->add_option("--m", samples, "Boundary samples for conformal domains")->check(CLI::Range(16, 1 << 16));
  auto* mesh_opt = domain->add_option("--mesh-h", mesh_h, "Also triangulate with this edge length");
  domain->add_option("--off", off_path, "OFF file for the mesh")->needs(mesh_opt);
  mesh_opt->needs("--off");

  // verify
  auto* verify = app.add_subcommand("verify", "Compare a lower bound with the finite-element oracle");
  verify->set_help_flag("--help", "Print this help message and exit");
  double h = 0.05;
  std::optional<double> verify_alpha;
  int starts = 8;
  std::uint64_t seed = 1;
  verify->add_option("--domain", domain_spec)->required();
  verify->add_option("--p", p)->required();
  verify->add_option("--route", route, "B | corollary | A | C | snowflake | SW")->required();
  verify->add_option("--h", h, "Target mesh edge length")->check(CLI::PositiveNumber);
  verify->add_option("--alpha", verify_alpha, "Exponent for the B route");
  verify->add_option("--K", k_opt);
  verify->add_option("--beta", beta_opt);
  verify->add_option("--starts", starts)->check(CLI::Range(1, 1000));
  verify->add_option("--seed", seed);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Tabulate log10 M_p(K) over a K range");
  std::string k_range;
  sweep->add_option("--route", route, "A")->required();
  sweep->add_option("--p", p)->required();
  sweep->add_option("--K", k_range, "a:b:step")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }
  const Emitter emitter{out, output};
  auto say = [&](const std::string& msg) {
    if (!quiet()) err << msg << '\n';
  };

  try {
    if (bound->parsed()) {
      auto dump = [&](const BoundReport& r) {
        Json j = to_json(r);
        if (log_only) strip_linear(j);
        emitter.emit(j.dump(2) + "\n");
      };
      std::optional<ParsedDomain> dom;
      if (!domain_spec.empty()) dom = parse_domain(domain_spec);
      try {
        if (route == "B" || route == "corollary") {
          const Alpha a = route == "corollary" ? Alpha::infinity() : Alpha::from_value(parse_real(alpha, "--alpha"));
          double area_v = 0.0, phi_v = 0.0;
          if (dom) {
            const auto* c = std::get_if<ConformalDomain>(&dom->source);
            if (!c) throw ParameterError("B route needs a conformal domain");
            area_v = area_opt ? *area_opt : (c->known_area() ? *c->known_area() : area(*c).value);
            phi_v = phi_opt ? *phi_opt : lalpha_norm(*c, a.is_infinite() ? INFINITY : a.value()).value;
          } else {
            if (!area_opt || !phi_opt) throw ParameterError("B route needs --area and --phi-norm (or --domain)");
            area_v = *area_opt;
            phi_v = *phi_opt;
          }
          dump(theorem_b_bound(p, a, area_v, phi_v));
        } else if (route == "A") {
          QuasidiscSpec spec;
          if (beta_opt) {
            spec = gamma_opt ? make_spiral_spec(*beta_opt, *gamma_opt, area_opt.value_or(1.0))
                             : make_star_spec(*beta_opt, area_opt.value_or(1.0));
          } else if (k_opt) {
            if (!(*k_opt >= 1.0)) throw ParameterError("--K must be >= 1");
            spec = make_direct_spec(*k_opt, area_opt.value_or(1.0));
          } else {
            throw ParameterError("A route needs --K or --beta");
          }
          m_p(p, spec.log_k);
          if (!area_opt) throw ParameterError("A route needs --area");
          dump(theorem_a_bound(p, spec));
        } else if (route == "C") {
          double c = 0.0, area_v = 0.0;
          if (dom) {
            const PolygonalCurve curve = source_curve(dom->source, 0.01);
            c = c_opt ? *c_opt : std::max(1.0, ahlfors_constant(curve));
            area_v = area_opt ? *area_opt : std::abs(polygon_area(curve));
          } else {
            if (!c_opt || !area_opt) throw ParameterError("C route needs --C and --area (or --domain)");
            c = *c_opt;
            area_v = *area_opt;
          }
          dump(theorem_c_bound(p, c, area_v));
        } else if (route == "snowflake") {
          double t = 0.0, area_v = 0.0;
          if (dom) {
            const auto* s = std::get_if<SnowflakeParams>(&dom->source);
            if (!s) throw ParameterError("snowflake route needs a snowflake domain");
            t = s->t;
            area_v = area_opt ? *area_opt : std::abs(polygon_area(generate_rohde_snowflake(*s)));
          } else {
            if (!t_opt || !area_opt) throw ParameterError("snowflake route needs --t and --area (or --domain)");
            t = *t_opt;
            area_v = *area_opt;
          }
          dump(snowflake_bound(p, t, area_v));
        } else {
          throw ParameterError("unknown route '" + route + "'");
        }
      } catch (const InfeasibleError& e) {
        emitter.emit(infeasible_report(canonical_route(route), e).dump(2) + "\n");
        err << e.what() << '\n';
        return kExitInfeasible;
      }
    } else if (norms->parsed()) {
      const ParsedDomain dom = parse_domain(domain_spec);
      const auto* c = std::get_if<ConformalDomain>(&dom.source);
      if (!c) throw ParameterError("norms needs a conformal domain");
      const DiscRule rule = build_rule(radial, angular);
      Json j;
      j["label"] = dom.label;
      j["area"] = to_json(area(*c, rule));
      Json list = Json::array();
      for (const std::string& s : alphas) {
        const double a = parse_real(s, "--alpha");
        list.push_back(Json{{"alpha", s}, {"norm", to_json(lalpha_norm(*c, a, rule))}});
      }
      j["lalpha"] = list;
      if (norm_p && norm_q) {
        const CompositionNorm cn = composition_norm(*c, *norm_p, *norm_q, rule);
        j["composition"] = Json{{"p", *norm_p}, {"q", *norm_q}, {"value", cn.value}, {"bound", cn.analytic_bound}};
      }
      emitter.emit(j.dump(2) + "\n");
    } else if (metrics->parsed()) {
      if (!csv_in.empty()) domain_spec = "csv:" + csv_in;
      if (domain_spec.empty()) throw ParameterError("curve-metrics needs --domain or --in");
      const ParsedDomain dom = parse_domain(domain_spec);
      const PolygonalCurve curve = std::holds_alternative<ConformalDomain>(dom.source)
                                       ? boundary_polyline(std::get<ConformalDomain>(dom.source), samples)
                                       : source_curve(dom.source, 0.0);
      Json j = to_json(curve_metrics(curve, oracle));
      j["label"] = dom.label;
      emitter.emit(j.dump(2) + "\n");
    } else if (domain->parsed()) {
      const ParsedDomain dom = parse_domain(domain_spec);
      const PolygonalCurve curve = std::holds_alternative<ConformalDomain>(dom.source)
                                       ? boundary_polyline(std::get<ConformalDomain>(dom.source), samples)
                                       : source_curve(dom.source, 0.0);
      std::ostringstream text;
      if (format == "csv") {
        write_curve_csv(text, curve);
      } else if (format == "svg") {
        write_curve_svg(text, curve);
      } else {
        Json pts = Json::array();
        for (Vec2 v : curve.vertices()) pts.push_back({v.x, v.y});
        text << Json{{"label", dom.label}, {"vertices", pts}}.dump(2) << '\n';
      }
      emitter.emit(text.str());
      if (!svg_path.empty()) {
        std::ostringstream svg;
        write_curve_svg(svg, curve);
        Emitter{err, svg_path}.emit(svg.str());
      }
      if (mesh_h) {
        say("meshing with h = " + format_real(*mesh_h));
        const Mesh mesh = triangulate(source_curve(dom.source, *mesh_h), *mesh_h);
        std::ostringstream off;
        write_mesh_off(off, mesh);
        Emitter{err, off_path}.emit(off.str());
      }
    } else if (verify->parsed()) {
      ParsedDomain dom = parse_domain(domain_spec);
      VerifyRequest req;
      req.domain = dom.source;
      req.label = dom.label;
      req.p = p;
      req.route = verify_route_from_name(route);
      req.h = h;
      req.alpha = verify_alpha;
      req.k = k_opt;
      req.beta = beta_opt;
      req.rayleigh.starts = starts;
      req.rayleigh.seed = seed;
      say("verifying " + dom.label + " via " + verify_route_name(req.route));
      try {
        emitter.emit(to_json(verify_bound(req)).dump(2) + "\n");
      } catch (const InfeasibleError& e) {
        emitter.emit(infeasible_report(verify_route_name(req.route), e).dump(2) + "\n");
        err << e.what() << '\n';
        return kExitInfeasible;
      }
    } else if (sweep->parsed()) {
      if (route != "A") throw ParameterError("sweep supports --route A");
      std::ostringstream text;
      text << "K,log10_M_p\n";
      for (double k : parse_range(k_range)) {
        text << format_real(k) << ',';
        try {
          text << format_real(m_p(p, std::log(k)).m_p.log10()) << '\n';
        } catch (const InfeasibleError&) {
          text << "infeasible\n";
        }
      }
      emitter.emit(text.str());
    }
  } catch (const InfeasibleError& e) {
    err << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace plb
