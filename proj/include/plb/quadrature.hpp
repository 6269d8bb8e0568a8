#pragma once

#include <functional>
#include <vector>

#include "plb/domains.hpp"

namespace plb {

/// Tensor-product rule on the unit disc: Gauss-Legendre in r on [0, 1]
/// (weights carry the Jacobian r) times the trapezoid rule in angle.
struct DiscRule {
  struct Node {
    Complex point;
    double weight;
  };
  int radial_nodes = 0;
  int angular_nodes = 0;
  std::vector<Node> nodes;
};

constexpr int kDefaultRadialNodes = 64;
constexpr int kDefaultAngularNodes = 256;

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Requires radial >= 4 and angular >= 8.
DiscRule build_rule(int radial = kDefaultRadialNodes, int angular = kDefaultAngularNodes);

/// sum_k w_k f(z_k), compensated.
double integrate(const DiscRule& rule, const std::function<double(Complex)>& f);

/// An integral-derived quantity together with its refinement history.
struct NormEstimate {
  double value = 0.0;
  /// Value on the previous (coarser) rule; equals `value` when no refinement ran.
  double coarse_value = 0.0;
  int refinements = 0;
  int radial_nodes = 0;
  int angular_nodes = 0;
  /// True when an L_inf norm came from boundary sampling (biased low).
  bool sampled_sup = false;
};

/// Relative change between successive refinements required for acceptance.
constexpr double kRefinementTolerance = 1e-6;
constexpr int kMaxRefinements = 4;

/// (int_D |phi'|^alpha)^(1/alpha), recomputed on rules with doubled radial and
/// angular resolution until the relative change drops below 1e-6. Throws
/// AccuracyError (carrying the last two values) after 4 refinements.
/// alpha = +inf uses known_sup_derivative, else a 4096-point boundary sample.
NormEstimate lalpha_norm(const ConformalDomain& domain, double alpha, const DiscRule& rule);
NormEstimate lalpha_norm(const ConformalDomain& domain, double alpha);

/// ||phi'||_{L_inf(D)}: the closed form when known, else max of |phi'| over
/// 4096 boundary points (flagged as sampled).
NormEstimate sup_norm(const ConformalDomain& domain);

/// |Omega| = int_D |phi'|^2.
NormEstimate area(const ConformalDomain& domain, const DiscRule& rule);
NormEstimate area(const ConformalDomain& domain);

struct CompositionNorm {
  /// K_{p,q}(D) = (int_D |phi'|^((p-2)q/(p-q)))^((p-q)/(pq)).
  double value = 0.0;
  /// |Omega|^((p-2)/(2p)) * pi^((2-q)/(2q)).
  double analytic_bound = 0.0;
  double area = 0.0;
  double exponent = 0.0;
};

/// Composition-operator norm of phi^*: L^1_p(Omega) -> L^1_q(D) and its
/// Hoelder bound. Requires p > 2, 1 <= q <= 2. Throws InconsistencyError when
/// the computed value exceeds the bound.
CompositionNorm composition_norm(const ConformalDomain& domain, double p, double q,
                                 const DiscRule& rule);
CompositionNorm composition_norm(const ConformalDomain& domain, double p, double q);

}  // namespace plb
