#pragma once

#include <optional>
#include <string>

#include "plb/domains.hpp"
#include "plb/magnitude.hpp"

namespace plb {

// Lower bounds for the first nontrivial Neumann eigenvalue mu_p^(1) of the
// p-Laplacian on planar domains, evaluated from explicit constants.
//
// Every constant that reaches 10^6 or exp(600 K^2) is computed in natural-log
// space. Exponents alpha close to 2 travel as Alpha (ln(alpha - 2)), and the
// quasiconformality coefficient K travels as ln K.

/// p_1 = j'_{1,1}, first zero of J_1', to the six digits used for calibration.
inline constexpr double kBesselPrimeZero = 1.84118;

/// pi^2 (2 + pi^2)^2 / ln 3: the exponent scale of the inverse Hoelder constant.
double inverse_holder_exponent_scale();

// ---------------------------------------------------------------------------
// delta and the q-infimum

/// delta = 1/q - (alpha - 2)/(p alpha); alpha = inf gives 1/q - 1/p.
double delta(double p, double q, Alpha alpha);

/// 1/2 - delta, evaluated without cancellation.
double half_gap(double p, double q, Alpha alpha);

/// ln of ((1 - delta)/(1/2 - delta))^((1 - delta) p); nullopt when delta >= 1/2.
std::optional<double> log_delta_factor(double p, double q, Alpha alpha);

struct QOptimum {
  double q = 2.0;
  double delta = 0.0;
  double log_factor = 0.0;
};

/// Minimizes the delta factor over feasible q in [1, 2] (delta < 1/2).
/// Throws InfeasibleError when no q is feasible.
QOptimum minimize_delta_factor(double p, Alpha alpha);

// ---------------------------------------------------------------------------
// Conformal alpha-regular domains

struct ConformalConstant {
  /// C_p = 2^p pi^((alpha-2)/alpha - p/2) inf_q (...), with prefactor
  /// 2^p pi^(1 - p/2) for alpha = inf.
  Magnitude c_p;
  QOptimum q;
};

/// Requires p >= 2 (p = 2 is the Laplacian limit) and alpha > 2.
ConformalConstant theorem_b_constant(double p, Alpha alpha);

// ---------------------------------------------------------------------------
// Quasidisc constants

/// ln nu(alpha) for nu = 10^(4 alpha) (alpha-2)/(alpha-1) (24 pi^2 K^2)^alpha.
double log_nu(Alpha alpha, double log_k);
double nu(double alpha, double k);

/// Root of nu(alpha) = 1, solved for ln(alpha - 2).
Alpha gamma_star(double log_k);

/// ln C_alpha, C_alpha = 10^6 / [(alpha - 1)(1 - nu)]^(1/alpha).
/// Throws InfeasibleError when nu >= 1.
double log_c_alpha(Alpha alpha, double log_k);
double c_alpha(double alpha, double k);

/// nu~ = 10^(8 kappa) (2kappa-2)/(2kappa-1) (24 pi^2 K)^(2 kappa), in log form.
double log_nu_tilde(Kappa kappa, double k);

struct InverseHolder {
  /// (C_kappa^2 K pi^(1/kappa - 1) / 4) exp(K pi^2 (2+pi^2)^2 / (2 ln 3)).
  Magnitude constant;
  double log_c_kappa = 0.0;
  double log_nu_tilde = 0.0;
  /// K pi^2 (2+pi^2)^2 / (2 ln 3), the log of the exponential factor.
  double log_exp_factor = 0.0;
};

/// Constant of the inverse Hoelder inequality for Jacobians of a K-quasiconformal
/// map. Requires 1 < kappa < K/(K-1) and nu~ < 1.
InverseHolder inverse_holder_constant(Kappa kappa, double k);

/// Upper bound on ||phi'||_{L_alpha(D)} for a K-quasidisc of the given area:
/// (C_alpha K pi^((2-alpha)/(2 alpha)) / 2) exp(K^2 pi^2 (2+pi^2)^2 / (4 ln 3)) |Omega|^(1/2).
/// Requires 2 < alpha < 2K^2/(K^2-1) and nu(alpha, K) < 1.
Magnitude conformal_derivative_bound(Alpha alpha, double k, double area);

/// Optimum of inf_alpha inf_q of ((1-delta)/(1/2-delta))^((1-delta)p) C_alpha^2
/// over 2 < alpha < alpha_star.
struct WindowOptimum {
  Alpha alpha;
  QOptimum q;
  double log_c_alpha = 0.0;
  double log_nu = 0.0;
  /// log_factor + 2 log_c_alpha at the optimum.
  double log_objective = 0.0;
  Alpha gamma_star;
  Alpha alpha_star;
};

struct MpResult {
  /// M_p(K) = pi^(p/2) / (2^(p-2) K^2) exp(-K^2 pi^2 (2+pi^2)^2 / (2 ln 3)) / inf(...).
  Magnitude m_p;
  WindowOptimum window;
};

/// Requires p > 2 and K >= 1. K = 1 (alpha* undefined) and unbounded K are infeasible.
MpResult m_p(double p, double log_k);

/// ln of the bound K < 2^-10 exp((1 + e^(2 pi) C^5)^2) for curves with
/// Ahlfors constant C.
double quasiconformity_from_ahlfors(double ahlfors_c);

// ---------------------------------------------------------------------------
// Reports

enum class Route { theorem_b, corollary_34, theorem_a, theorem_c, snowflake };

std::string route_name(Route r);
Route route_from_name(const std::string& name);

struct BoundReport {
  Route route = Route::theorem_b;
  std::string paper_route;
  bool feasible = true;
  std::string infeasible_constraint;

  double p = 0.0;
  Magnitude mu_lower;
  Alpha chosen_alpha;
  double chosen_q = 0.0;
  double delta = 0.0;
  double area = 0.0;
  double r_star = 0.0;
  Magnitude m_p;
  Magnitude m_p_star;

  // Theorem B routes.
  std::optional<Magnitude> c_p;
  std::optional<double> phi_alpha_norm;

  // Quasidisc routes.
  std::optional<double> log_k;
  std::optional<double> log_c_alpha;
  std::optional<double> log_nu_at_alpha;
  std::optional<Alpha> gamma_star;
  std::optional<Alpha> alpha_star;
  /// Set when alpha_star uses 2K^2/(K^2-1) rather than K^2/(K^2-1).
  bool alpha_star_discrepancy = false;

  // Route inputs.
  std::optional<double> ahlfors_c;
  std::optional<double> snowflake_t;
  std::optional<double> beta;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

/// 1/mu <= C_p |Omega|^((p-2)/2) ||phi'||_{L_alpha}^2. alpha = inf selects
/// the infinity-regular route.
BoundReport theorem_b_bound(double p, Alpha alpha, double area, double phi_alpha_norm);

/// mu >= M_p(K) / |Omega|^(p/2) = M*_p(K) / R_*^p.
BoundReport theorem_a_bound(double p, const QuasidiscSpec& spec);

/// Bound for a domain whose boundary satisfies the Ahlfors condition with constant C.
BoundReport theorem_c_bound(double p, double ahlfors_c, double area);

/// Bound for a Rohde snowflake with parameter t in [1/4, 1/2).
BoundReport snowflake_bound(double p, double t, double area);

/// Szegoe-Weinberger: mu_2^(1)(Omega) <= p_1^2 / R_*^2 with R_*^2 = area / pi.
double szego_weinberger_upper(double area);

}  // namespace plb
