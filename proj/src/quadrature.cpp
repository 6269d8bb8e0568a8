#include "plb/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "plb/errors.hpp"
#include "plb/summation.hpp"

namespace plb {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

DiscRule build_rule(int radial, int angular) {
  if (radial < 4) throw ParameterError("build_rule: radial must be >= 4");
  if (angular < 8) throw ParameterError("build_rule: angular must be >= 8");
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(radial, x, w);
  DiscRule rule;
  rule.radial_nodes = radial;
  rule.angular_nodes = angular;
  rule.nodes.reserve(static_cast<std::size_t>(radial) * angular);
  const double dtheta = 2.0 * std::numbers::pi / angular;
  for (int a = 0; a < angular; ++a) {
    const Complex dir = std::polar(1.0, dtheta * a);
    for (int k = 0; k < radial; ++k) {
      const double r = 0.5 * (x[static_cast<std::size_t>(k)] + 1.0);
      const double wr = 0.5 * w[static_cast<std::size_t>(k)] * r;
      rule.nodes.push_back({r * dir, wr * dtheta});
    }
  }
  return rule;
}

double integrate(const DiscRule& rule, const std::function<double(Complex)>& f) {
  CompensatedSum s;
  for (const auto& node : rule.nodes) s += node.weight * f(node.point);
  return s.value();
}

namespace {

// Integrates f on `rule` and on successively doubled rules until the value of
// post(integral) settles.
NormEstimate refine(const DiscRule& rule, const std::function<double(Complex)>& f,
                    const std::function<double(double)>& post, const char* what) {
  NormEstimate est;
  est.radial_nodes = rule.radial_nodes;
  est.angular_nodes = rule.angular_nodes;
  double current = post(integrate(rule, f));
  for (int level = 1; level <= kMaxRefinements; ++level) {
    const DiscRule fine = build_rule(est.radial_nodes * 2, est.angular_nodes * 2);
    const double next = post(integrate(fine, f));
    est.radial_nodes = fine.radial_nodes;
    est.angular_nodes = fine.angular_nodes;
    est.refinements = level;
    if (std::abs(next - current) <= kRefinementTolerance * std::abs(next)) {
      est.value = next;
      est.coarse_value = current;
      return est;
    }
    if (level == kMaxRefinements) {
      std::ostringstream msg;
      msg.precision(17);
      msg << what << ": no convergence after " << kMaxRefinements << " refinements ("
          << current << " vs " << next << ")";
      throw AccuracyError(msg.str(), current, next);
    }
    current = next;
  }
  return est;  // unreachable
}

}  // namespace

NormEstimate sup_norm(const ConformalDomain& domain) {
  NormEstimate est;
  if (auto s = domain.known_sup_derivative()) {
    est.value = est.coarse_value = *s;
    return est;
  }
  // Maximum principle: |phi'| peaks on the boundary; sampling it underestimates.
  constexpr int kSamples = 4096;
  double best = 0.0;
  for (int k = 0; k < kSamples; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / kSamples);
    best = std::max(best, std::abs(domain.derivative(z)));
  }
  est.value = est.coarse_value = best;
  est.sampled_sup = true;
  return est;
}

NormEstimate lalpha_norm(const ConformalDomain& domain, double alpha, const DiscRule& rule) {
  if (std::isinf(alpha) && alpha > 0) return sup_norm(domain);
  if (!(alpha >= 1.0)) throw ParameterError("lalpha_norm: alpha must be >= 1");
  auto f = [&](Complex z) { return std::pow(std::abs(domain.derivative(z)), alpha); };
  auto root = [alpha](double integral) { return std::pow(integral, 1.0 / alpha); };
  return refine(rule, f, root, "lalpha_norm");
}

NormEstimate lalpha_norm(const ConformalDomain& domain, double alpha) {
  return lalpha_norm(domain, alpha, build_rule());
}

NormEstimate area(const ConformalDomain& domain, const DiscRule& rule) {
  auto f = [&](Complex z) { return std::norm(domain.derivative(z)); };
  return refine(rule, f, [](double v) { return v; }, "area");
}

NormEstimate area(const ConformalDomain& domain) { return area(domain, build_rule()); }

CompositionNorm composition_norm(const ConformalDomain& domain, double p, double q,
                                 const DiscRule& rule) {
  if (!(p > 2.0) || !std::isfinite(p)) throw ParameterError("composition_norm: p must be > 2");
  if (!(q >= 1.0 && q <= 2.0)) throw ParameterError("composition_norm: q must lie in [1, 2]");
  CompositionNorm out;
  out.exponent = (p - 2.0) * q / (p - q);
  const double outer = (p - q) / (p * q);
  auto f = [&](Complex z) { return std::pow(std::abs(domain.derivative(z)), out.exponent); };
  out.value = refine(rule, f, [outer](double v) { return std::pow(v, outer); }, "composition_norm")
                  .value;
  out.area = area(domain, rule).value;
  out.analytic_bound = std::pow(out.area, (p - 2.0) / (2.0 * p)) *
                       std::pow(std::numbers::pi, (2.0 - q) / (2.0 * q));
  if (out.value > out.analytic_bound * (1.0 + 1e-9)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "composition_norm: K_{p,q} = " << out.value << " exceeds its Hoelder bound "
        << out.analytic_bound << " (p=" << p << ", q=" << q << ")";
    throw InconsistencyError(msg.str());
  }
  return out;
}

CompositionNorm composition_norm(const ConformalDomain& domain, double p, double q) {
  return composition_norm(domain, p, q, build_rule());
}

}  // namespace plb
