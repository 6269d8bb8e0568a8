#include "plb/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "plb/errors.hpp"

namespace plb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
const double kLn2 = std::log(2.0);
const double kLn10 = std::log(10.0);
const double kLnPi = std::log(kPi);
const double kLn24Pi2 = std::log(24.0 * kPi * kPi);

constexpr int kWindowGrid = 256;
constexpr double kEndpointMargin = 1e-6;
constexpr double kWindowDecades = 12.0;

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

void require_alpha(Alpha alpha, const char* who) {
  if (std::isnan(alpha.log_excess()) || alpha.log_excess() == -kInf) {
    throw ParameterError(std::string(who) + ": alpha must exceed 2");
  }
}

double alpha_value(Alpha a) { return a.is_infinite() ? kInf : a.value(); }

// Minimizes f on [a, b] by golden section.
double golden_section(const std::function<double(double)>& f, double a, double b, int iters) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - r * (b - a);
  double x2 = a + r * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iters && x1 < x2; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

// ln nu as a function of lambda = ln(alpha - 2), for nu = 10^(4 alpha)
// (alpha-2)/(alpha-1) exp(alpha * base):
//   ln nu = c0 + h(lambda),  c0 = 8 ln 10 + 2 base,
//   h(lambda) = lambda + e^lambda (4 ln 10 + base) - log1p(e^lambda).
// h is increasing and convex once base >= 1, so Newton from the right of the
// root converges monotonically. Carrying ln nu separately from lambda keeps
// the window search meaningful when c0 ~ 1e21 swamps lambda's resolution.
struct NuModel {
  double base;

  double c0() const { return 8.0 * kLn10 + 2.0 * base; }
  double slope() const { return 4.0 * kLn10 + base; }

  double h(double lambda) const {
    const double e = std::exp(lambda);
    return lambda + e * slope() - std::log1p(e);
  }
  double log_nu(double lambda) const {
    if (lambda == kInf) return kInf;
    return c0() + h(lambda);
  }

  // lambda with log_nu(lambda) = s.
  double invert(double s) const {
    const double r = s - c0();
    double lambda = r;
    for (int i = 0; i < 200; ++i) {
      const double e = std::exp(lambda);
      const double g = h(lambda) - r;
      const double dg = 1.0 + e * slope() - e / (1.0 + e);
      const double step = g / dg;
      const double next = lambda - step;
      if (!(next < lambda)) break;
      lambda = next;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(lambda))) break;
    }
    return lambda;
  }
};

double log_c_alpha_at(double lambda, double log_nu) {
  if (!(log_nu < 0.0)) {
    throw InfeasibleError("nu(alpha, K) < 1", "ln nu = " + fmt(log_nu));
  }
  const double alpha = 2.0 + std::exp(lambda);
  return 6.0 * kLn10 - (std::log1p(std::exp(lambda)) + std::log(-std::expm1(log_nu))) / alpha;
}

// ln(2K^2/(K^2 - 1) - 2) = ln 2 - ln(K^2 - 1), from ln K^2.
double log_cap_excess(double log_k2) {
  if (!(log_k2 > 0.0)) return kInf;
  const double log_k2m1 = log_k2 > 40.0 ? log_k2 + std::log1p(-std::exp(-log_k2))
                                        : std::log(std::expm1(log_k2));
  return kLn2 - log_k2m1;
}

struct WindowProblem {
  double p;
  NuModel model;
  /// ln(alpha_cap - 2) from 2K^2/(K^2 - 1); +inf when absent.
  double cap_lambda;
};

struct WindowPoint {
  double lambda;
  double log_nu;
  QOptimum q;
  double log_c_alpha;
  double objective;
};

WindowPoint evaluate_window(const WindowProblem& w, double s) {
  WindowPoint pt;
  pt.log_nu = s;
  pt.lambda = w.model.invert(s);
  pt.q = minimize_delta_factor(w.p, Alpha::from_log_excess(pt.lambda));
  pt.log_c_alpha = log_c_alpha_at(pt.lambda, s);
  pt.objective = pt.q.log_factor + 2.0 * pt.log_c_alpha;
  return pt;
}

WindowOptimum minimize_window(const WindowProblem& w) {
  const double lambda_gamma = w.model.invert(0.0);
  const double s_cap = w.model.log_nu(w.cap_lambda);
  const double s_max = std::min(0.0, s_cap);
  if (!std::isfinite(lambda_gamma) || std::isnan(s_max) || s_max == -kInf) {
    throw InfeasibleError("2 < alpha < alpha*", "empty alpha window");
  }
  const double hi = s_max + std::log1p(-kEndpointMargin);
  const double lo = s_max - kWindowDecades * kLn10;

  std::array<double, kWindowGrid> grid{};
  std::size_t best = 0;
  double best_value = kInf;
  for (int k = 0; k < kWindowGrid; ++k) {
    const double s = lo + (hi - lo) * k / (kWindowGrid - 1);
    grid[static_cast<std::size_t>(k)] = s;
    const double v = evaluate_window(w, s).objective;
    if (v < best_value) {
      best_value = v;
      best = static_cast<std::size_t>(k);
    }
  }
  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, grid.size() - 1)];
  auto f = [&](double s) { return evaluate_window(w, s).objective; };
  const double s_refined = golden_section(f, a, b, 200);
  WindowPoint pt = evaluate_window(w, s_refined);
  const WindowPoint at_grid = evaluate_window(w, grid[best]);
  if (at_grid.objective < pt.objective) pt = at_grid;

  WindowOptimum out;
  out.alpha = Alpha::from_log_excess(pt.lambda);
  out.q = pt.q;
  out.log_c_alpha = pt.log_c_alpha;
  out.log_nu = pt.log_nu;
  out.log_objective = pt.objective;
  out.gamma_star = Alpha::from_log_excess(lambda_gamma);
  out.alpha_star = Alpha::from_log_excess(std::min(lambda_gamma, w.cap_lambda));
  return out;
}

WindowProblem quasidisc_window(double p, double log_k) {
  return WindowProblem{p, NuModel{kLn24Pi2 + 2.0 * log_k}, log_cap_excess(2.0 * log_k)};
}

void fill_geometry(BoundReport& r) {
  r.r_star = std::sqrt(r.area / kPi);
  r.m_p = r.mu_lower * Magnitude::from_log(0.5 * r.p * std::log(r.area));
  r.m_p_star = r.m_p * Magnitude::from_log(-0.5 * r.p * kLnPi);
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ParameterError(std::string(what) + " must be positive and finite");
}

// (1 + e^(c pi) C^5)^2.
double ahlfors_exponent(double c, double pi_multiple) {
  return std::pow(1.0 + std::exp(pi_multiple * kPi) * std::pow(c, 5.0), 2.0);
}

// Shared tail of the Ahlfors-type bounds:
//   1/mu <= inf(g C_alpha^2) 2^(p-22) e^(E) pi^(-p/2) exp(IH e^(E) / 2^21) area^(p/2).
BoundReport ahlfors_type_bound(double p, double area, double exponent_e, const WindowProblem& w) {
  BoundReport r;
  r.p = p;
  r.area = area;
  const WindowOptimum opt = minimize_window(w);
  const double prefactor = opt.log_objective + (p - 22.0) * kLn2 + exponent_e - 0.5 * p * kLnPi +
                           0.5 * p * std::log(area);
  const double log_exp_term = std::log(inverse_holder_exponent_scale()) + exponent_e - 21.0 * kLn2;
  const Magnitude inv_mu = Magnitude::from_log(prefactor) * Magnitude::from_log_log(log_exp_term, 1);
  r.mu_lower = inv_mu.reciprocal();
  r.chosen_alpha = opt.alpha;
  r.chosen_q = opt.q.q;
  r.delta = opt.q.delta;
  r.log_c_alpha = opt.log_c_alpha;
  r.log_nu_at_alpha = opt.log_nu;
  r.gamma_star = opt.gamma_star;
  r.alpha_star = opt.alpha_star;
  r.alpha_star_discrepancy = false;
  fill_geometry(r);
  return r;
}

void require_p(double p, const char* who) {
  if (!(p > 2.0) || !std::isfinite(p)) throw ParameterError(std::string(who) + ": p must be > 2");
}

}  // namespace

double inverse_holder_exponent_scale() {
  const double a = 2.0 + kPi * kPi;
  return kPi * kPi * a * a / std::log(3.0);
}

double delta(double p, double q, Alpha alpha) {
  const double tail = alpha.is_infinite() ? 1.0 / p : alpha.excess() / (p * alpha.value());
  return 1.0 / q - tail;
}

double half_gap(double p, double q, Alpha alpha) {
  const double tail = alpha.is_infinite() ? 1.0 / p : alpha.excess() / (p * alpha.value());
  return (q - 2.0) / (2.0 * q) + tail;
}

std::optional<double> log_delta_factor(double p, double q, Alpha alpha) {
  const double gap = half_gap(p, q, alpha);
  double log_gap;
  if (q == 2.0) {
    log_gap = alpha.is_infinite() ? -std::log(p) : alpha.log_excess() - std::log(p * alpha.value());
  } else {
    if (!(gap > 0.0)) return std::nullopt;
    log_gap = std::log(gap);
  }
  const double log_half_plus = std::log1p(2.0 * gap) - kLn2;
  return (0.5 + gap) * p * (log_half_plus - log_gap);
}

QOptimum minimize_delta_factor(double p, Alpha alpha) {
  auto at = [&](double q) -> std::optional<QOptimum> {
    const auto v = log_delta_factor(p, q, alpha);
    if (!v) return std::nullopt;
    return QOptimum{q, delta(p, q, alpha), *v};
  };
  std::optional<QOptimum> best = at(2.0);
  if (!best) {
    throw InfeasibleError("delta < 1/2", "no q in [1, 2] for p = " + fmt(p));
  }
  const double tail = alpha.is_infinite() ? 1.0 / p : alpha.excess() / (p * alpha.value());
  const double q_lo = std::max(1.0, 2.0 / (1.0 + 2.0 * tail));
  if (q_lo < 2.0) {
    const double a = q_lo == 1.0 && half_gap(p, 1.0, alpha) > 0.0 ? 1.0 : q_lo + kEndpointMargin * (2.0 - q_lo);
    auto f = [&](double q) {
      const auto v = log_delta_factor(p, q, alpha);
      return v ? *v : kInf;
    };
    for (double q : {a, golden_section(f, a, 2.0, 120)}) {
      const auto c = at(q);
      if (c && c->log_factor < best->log_factor) best = c;
    }
  }
  return *best;
}

ConformalConstant theorem_b_constant(double p, Alpha alpha) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw ParameterError("theorem_b_constant: p must be >= 2");
  require_alpha(alpha, "theorem_b_constant");
  ConformalConstant out;
  out.q = minimize_delta_factor(p, alpha);
  const double e = alpha.excess();
  const double pi_power = (alpha.is_infinite() ? 1.0 : e / (2.0 + e)) - 0.5 * p;
  out.c_p = Magnitude::from_log(p * kLn2 + pi_power * kLnPi + out.q.log_factor);
  return out;
}

double log_nu(Alpha alpha, double log_k) {
  require_alpha(alpha, "log_nu");
  return NuModel{kLn24Pi2 + 2.0 * log_k}.log_nu(alpha.log_excess());
}

double nu(double alpha, double k) {
  require_positive(k, "K");
  return std::exp(log_nu(Alpha::from_value(alpha), std::log(k)));
}

Alpha gamma_star(double log_k) {
  if (!(log_k >= 0.0)) throw ParameterError("gamma_star: K must be >= 1");
  return Alpha::from_log_excess(NuModel{kLn24Pi2 + 2.0 * log_k}.invert(0.0));
}

double log_c_alpha(Alpha alpha, double log_k) {
  require_alpha(alpha, "log_c_alpha");
  if (alpha.is_infinite()) throw InfeasibleError("nu(alpha, K) < 1", "alpha = inf");
  return log_c_alpha_at(alpha.log_excess(), log_nu(alpha, log_k));
}

double c_alpha(double alpha, double k) {
  require_positive(k, "K");
  return std::exp(log_c_alpha(Alpha::from_value(alpha), std::log(k)));
}

double log_nu_tilde(Kappa kappa, double k) {
  const double lambda = kappa.log_excess();
  const double kv = 1.0 + std::exp(lambda);
  return 8.0 * kv * kLn10 + kLn2 + lambda - std::log1p(2.0 * std::exp(lambda)) +
         2.0 * kv * std::log(24.0 * kPi * kPi * k);
}

InverseHolder inverse_holder_constant(Kappa kappa, double k) {
  if (!(k >= 1.0) || !std::isfinite(k)) throw ParameterError("inverse_holder_constant: K must be >= 1");
  if (std::isnan(kappa.log_excess()) || kappa.log_excess() == -kInf || kappa.is_infinite()) {
    throw InfeasibleError("1 < kappa < K/(K-1)", "kappa must be finite and > 1");
  }
  if (k > 1.0 && !(kappa.log_excess() < -std::log(k - 1.0))) {
    throw InfeasibleError("1 < kappa < K/(K-1)", "kappa = " + fmt(kappa.value()) + ", K = " + fmt(k));
  }
  InverseHolder out;
  const double kv = kappa.value();
  out.log_nu_tilde = log_nu_tilde(kappa, k);
  if (!(out.log_nu_tilde < 0.0)) {
    throw InfeasibleError("nu~(kappa, K) < 1", "ln nu~ = " + fmt(out.log_nu_tilde));
  }
  out.log_c_kappa = 6.0 * kLn10 - (std::log1p(2.0 * kappa.excess()) +
                                   std::log(-std::expm1(out.log_nu_tilde))) / (2.0 * kv);
  out.log_exp_factor = 0.5 * k * inverse_holder_exponent_scale();
  out.constant = Magnitude::from_log(2.0 * out.log_c_kappa + std::log(k) + (1.0 / kv - 1.0) * kLnPi -
                                     std::log(4.0) + out.log_exp_factor);
  return out;
}

Magnitude conformal_derivative_bound(Alpha alpha, double k, double area) {
  require_alpha(alpha, "conformal_derivative_bound");
  require_positive(area, "area");
  if (!(k >= 1.0) || !std::isfinite(k)) throw ParameterError("conformal_derivative_bound: K must be >= 1");
  const double log_k = std::log(k);
  if (!(alpha.log_excess() < log_cap_excess(2.0 * log_k))) {
    throw InfeasibleError("2 < alpha < 2K^2/(K^2-1)", "alpha = " + fmt(alpha_value(alpha)) + ", K = " + fmt(k));
  }
  const double lc = log_c_alpha(alpha, log_k);
  const double a = alpha.value();
  return Magnitude::from_log(lc + log_k + (2.0 - a) / (2.0 * a) * kLnPi - kLn2 +
                             0.25 * k * k * inverse_holder_exponent_scale() + 0.5 * std::log(area));
}

MpResult m_p(double p, double log_k) {
  require_p(p, "m_p");
  if (log_k == kInf) throw InfeasibleError("K < inf", "the quasiconformality coefficient is unbounded");
  if (!(log_k >= 0.0)) throw ParameterError("m_p: K must be >= 1");
  if (log_k == 0.0) throw InfeasibleError("K > 1", "alpha* = 2K^2/(K^2-1) is undefined at K = 1");
  MpResult out;
  out.window = minimize_window(quasidisc_window(p, log_k));
  // exp(-K^2 IH / 2) with K^2 = exp(2 ln K).
  const double k2 = std::exp(2.0 * log_k);
  out.m_p = Magnitude::from_log(0.5 * p * kLnPi - (p - 2.0) * kLn2 - 2.0 * log_k -
                                0.5 * k2 * inverse_holder_exponent_scale() - out.window.log_objective);
  return out;
}

double quasiconformity_from_ahlfors(double ahlfors_c) {
  if (!(ahlfors_c >= 1.0) || !std::isfinite(ahlfors_c)) {
    throw ParameterError("quasiconformity_from_ahlfors: C must be >= 1");
  }
  return ahlfors_exponent(ahlfors_c, 2.0) - 10.0 * kLn2;
}

std::string route_name(Route r) {
  switch (r) {
    case Route::theorem_b: return "theorem_B";
    case Route::corollary_34: return "corollary_34";
    case Route::theorem_a: return "theorem_A";
    case Route::theorem_c: return "theorem_C";
    case Route::snowflake: return "snowflake";
  }
  return "?";
}

Route route_from_name(const std::string& name) {
  for (Route r : {Route::theorem_b, Route::corollary_34, Route::theorem_a, Route::theorem_c, Route::snowflake}) {
    if (route_name(r) == name) return r;
  }
  throw ParameterError("unknown route '" + name + "'");
}

BoundReport theorem_b_bound(double p, Alpha alpha, double area, double phi_alpha_norm) {
  require_positive(area, "area");
  require_positive(phi_alpha_norm, "phi_alpha_norm");
  const ConformalConstant c = theorem_b_constant(p, alpha);
  BoundReport r;
  r.route = alpha.is_infinite() ? Route::corollary_34 : Route::theorem_b;
  r.paper_route = alpha.is_infinite() ? "corollary_34 (infinity-regular)"
                                      : "theorem_B(alpha=" + fmt(alpha.value()) + ")";
  r.p = p;
  r.area = area;
  r.chosen_alpha = alpha;
  r.chosen_q = c.q.q;
  r.delta = c.q.delta;
  r.c_p = c.c_p;
  r.phi_alpha_norm = phi_alpha_norm;
  const Magnitude inv_mu = c.c_p * Magnitude::from_log(0.5 * (p - 2.0) * std::log(area) +
                                                       2.0 * std::log(phi_alpha_norm));
  r.mu_lower = inv_mu.reciprocal();
  fill_geometry(r);
  return r;
}

BoundReport theorem_a_bound(double p, const QuasidiscSpec& spec) {
  require_positive(spec.area, "area");
  const MpResult m = m_p(p, spec.log_k);
  BoundReport r;
  r.route = Route::theorem_a;
  r.paper_route = "theorem_A(K=" + fmt(spec.k()) +
                  "); alpha* = min(2K^2/(K^2-1), gamma*) as in the proof, the statement prints K^2/(K^2-1)";
  r.p = p;
  r.area = spec.area;
  r.m_p = m.m_p;
  r.mu_lower = m.m_p * Magnitude::from_log(-0.5 * p * std::log(spec.area));
  r.chosen_alpha = m.window.alpha;
  r.chosen_q = m.window.q.q;
  r.delta = m.window.q.delta;
  r.log_k = spec.log_k;
  r.log_c_alpha = m.window.log_c_alpha;
  r.log_nu_at_alpha = m.window.log_nu;
  r.gamma_star = m.window.gamma_star;
  r.alpha_star = m.window.alpha_star;
  r.alpha_star_discrepancy = true;
  if (spec.provenance.kind == Provenance::Kind::star || spec.provenance.kind == Provenance::Kind::spiral) {
    r.beta = spec.provenance.beta;
  }
  r.r_star = std::sqrt(spec.area / kPi);
  r.m_p_star = r.m_p * Magnitude::from_log(-0.5 * p * kLnPi);
  return r;
}

BoundReport theorem_c_bound(double p, double ahlfors_c, double area) {
  require_p(p, "theorem_c_bound");
  require_positive(area, "area");
  const double log_k = quasiconformity_from_ahlfors(ahlfors_c);
  const double x = ahlfors_exponent(ahlfors_c, 2.0);
  if (!std::isfinite(x)) throw InfeasibleError("K < inf", "(1 + e^(2 pi) C^5)^2 overflows for C = " + fmt(ahlfors_c));
  BoundReport r = ahlfors_type_bound(p, area, 2.0 * x, quasidisc_window(p, log_k));
  r.route = Route::theorem_c;
  r.paper_route = "theorem_C(C=" + fmt(ahlfors_c) + ")";
  r.log_k = log_k;
  r.ahlfors_c = ahlfors_c;
  return r;
}

BoundReport snowflake_bound(double p, double t, double area) {
  require_p(p, "snowflake_bound");
  require_positive(area, "area");
  if (!(t >= 0.25 && t < 0.5)) throw ParameterError("snowflake_bound: t must lie in [1/4, 1/2)");
  const double c = 16.0 / (1.0 - 2.0 * t);
  const double x4 = ahlfors_exponent(c, 4.0);
  const double x2 = ahlfors_exponent(c, 2.0);
  if (!std::isfinite(x4)) throw InfeasibleError("K < inf", "(1 + e^(4 pi) C^5)^2 overflows for t = " + fmt(t));
  // nu base ln(3 pi^2 / 2^17) + 4 X2 = ln(24 pi^2 K^2) with K^2 = 2^-20 e^(4 X2).
  const double log_k2 = 4.0 * x2 - 20.0 * kLn2;
  const WindowProblem w{p, NuModel{std::log(3.0 * kPi * kPi) - 17.0 * kLn2 + 4.0 * x2},
                        log_cap_excess(log_k2)};
  BoundReport r = ahlfors_type_bound(p, area, 4.0 * x4, w);
  r.route = Route::snowflake;
  r.paper_route = "snowflake(t=" + fmt(t) + ")";
  r.log_k = 0.5 * log_k2;
  r.ahlfors_c = c;
  r.snowflake_t = t;
  return r;
}

double szego_weinberger_upper(double area) {
  require_positive(area, "area");
  return kBesselPrimeZero * kBesselPrimeZero / (area / kPi);
}

}  // namespace plb
