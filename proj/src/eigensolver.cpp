#include "plb/eigensolver.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "plb/summation.hpp"

namespace plb {

namespace {

// Six-point rule exact for degree 4 on a triangle (barycentric, weights sum to 1).
constexpr int kQuadPoints = 6;
constexpr std::array<std::array<double, 3>, kQuadPoints> kBary{{
    {0.108103018168070, 0.445948490915965, 0.445948490915965},
    {0.445948490915965, 0.108103018168070, 0.445948490915965},
    {0.445948490915965, 0.445948490915965, 0.108103018168070},
    {0.816847572980459, 0.091576213509771, 0.091576213509771},
    {0.091576213509771, 0.816847572980459, 0.091576213509771},
    {0.091576213509771, 0.091576213509771, 0.816847572980459},
}};
constexpr std::array<double, kQuadPoints> kQuadWeights{
    0.223381589678011, 0.223381589678011, 0.223381589678011,
    0.109951743655322, 0.109951743655322, 0.109951743655322};

// |x|^p and |x|^(p-2) x with integer fast paths.
struct Power {
  double p;
  int ip;

  explicit Power(double pp) : p(pp), ip(pp == std::floor(pp) && pp <= 8.0 ? static_cast<int>(pp) : 0) {}

  double abs_pow(double x) const {
    const double a = std::abs(x);
    switch (ip) {
      case 2: return a * a;
      case 3: return a * a * a;
      case 4: return a * a * a * a;
      default: return std::pow(a, p);
    }
  }
  double odd_pow(double x) const {
    switch (ip) {
      case 2: return x;
      case 3: return std::abs(x) * x;
      case 4: return x * x * x;
      default: return std::pow(std::abs(x), p - 2.0) * x;
    }
  }
  double abs_pow_m2(double x) const {
    switch (ip) {
      case 2: return 1.0;
      case 3: return std::abs(x);
      case 4: return x * x;
      default: return std::pow(std::abs(x), p - 2.0);
    }
  }
  double grad_pow(double norm2) const {
    switch (ip) {
      case 2: return norm2;
      case 4: return norm2 * norm2;
      default: return std::pow(norm2, 0.5 * p);
    }
  }
  double grad_pow_m2(double norm2) const {
    switch (ip) {
      case 2: return 1.0;
      case 4: return norm2;
      default: return std::pow(norm2, 0.5 * p - 1.0);
    }
  }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  CompensatedSum s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s.value();
}

using SparseMatrix = Eigen::SparseMatrix<double>;

void assemble_laplace(const Mesh& mesh, SparseMatrix& stiffness, SparseMatrix& mass) {
  const auto n = static_cast<Eigen::Index>(mesh.points.size());
  std::vector<Eigen::Triplet<double>> k;
  std::vector<Eigen::Triplet<double>> m;
  k.reserve(mesh.triangles.size() * 9);
  m.reserve(mesh.triangles.size() * 9);
  for (const auto& t : mesh.triangles) {
    const Vec2 a = mesh.points[t[0]], b = mesh.points[t[1]], c = mesh.points[t[2]];
    const double area = 0.5 * orient(a, b, c);
    const std::array<Vec2, 3> g{Vec2{b.y - c.y, c.x - b.x}, Vec2{c.y - a.y, a.x - c.x},
                                Vec2{a.y - b.y, b.x - a.x}};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        k.emplace_back(t[i], t[j], plb::dot(g[i], g[j]) / (4.0 * area));
        m.emplace_back(t[i], t[j], area / 12.0 * (i == j ? 2.0 : 1.0));
      }
    }
  }
  stiffness.resize(n, n);
  mass.resize(n, n);
  stiffness.setFromTriplets(k.begin(), k.end());
  mass.setFromTriplets(m.begin(), m.end());
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

struct RunResult {
  std::vector<double> u;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

}  // namespace

RayleighFunctional::RayleighFunctional(const Mesh& mesh, double p) : n_(mesh.points.size()), p_(p) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw ParameterError("Rayleigh functional: p must be >= 2");
  CompensatedSum total;
  elements_.reserve(mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    const Vec2 a = mesh.points[t[0]], b = mesh.points[t[1]], c = mesh.points[t[2]];
    const double twice = orient(a, b, c);
    if (!(twice > 0.0)) throw MeshingError("Rayleigh functional: degenerate triangle");
    Element e;
    e.v = t;
    e.area = 0.5 * twice;
    e.grad = {Vec2{(b.y - c.y) / twice, (c.x - b.x) / twice}, Vec2{(c.y - a.y) / twice, (a.x - c.x) / twice},
              Vec2{(a.y - b.y) / twice, (b.x - a.x) / twice}};
    elements_.push_back(e);
    total += e.area;
  }
  area_ = total.value();
}

double RayleighFunctional::gradient_energy(const std::vector<double>& u) const {
  const Power pw(p_);
  CompensatedSum s;
  for (const Element& e : elements_) {
    const Vec2 g = u[e.v[0]] * e.grad[0] + u[e.v[1]] * e.grad[1] + u[e.v[2]] * e.grad[2];
    s += e.area * pw.grad_pow(plb::dot(g, g));
  }
  return s.value();
}

double RayleighFunctional::lp_energy(const std::vector<double>& u) const {
  const Power pw(p_);
  CompensatedSum s;
  for (const Element& e : elements_) {
    double local = 0.0;
    for (int q = 0; q < kQuadPoints; ++q) {
      const double x = kBary[q][0] * u[e.v[0]] + kBary[q][1] * u[e.v[1]] + kBary[q][2] * u[e.v[2]];
      local += kQuadWeights[q] * pw.abs_pow(x);
    }
    s += e.area * local;
  }
  return s.value();
}

double RayleighFunctional::constraint(const std::vector<double>& u) const {
  const Power pw(p_);
  CompensatedSum s;
  for (const Element& e : elements_) {
    double local = 0.0;
    for (int q = 0; q < kQuadPoints; ++q) {
      const double x = kBary[q][0] * u[e.v[0]] + kBary[q][1] * u[e.v[1]] + kBary[q][2] * u[e.v[2]];
      local += kQuadWeights[q] * pw.odd_pow(x);
    }
    s += e.area * local;
  }
  return s.value();
}

double RayleighFunctional::shift(const std::vector<double>& u) const {
  const Power pw(p_);
  std::vector<double> uq;
  std::vector<double> wq;
  uq.reserve(elements_.size() * kQuadPoints);
  wq.reserve(elements_.size() * kQuadPoints);
  CompensatedSum mean;
  for (const Element& e : elements_) {
    for (int q = 0; q < kQuadPoints; ++q) {
      const double x = kBary[q][0] * u[e.v[0]] + kBary[q][1] * u[e.v[1]] + kBary[q][2] * u[e.v[2]];
      uq.push_back(x);
      wq.push_back(e.area * kQuadWeights[q]);
      mean += e.area * kQuadWeights[q] * x;
    }
  }
  if (pw.ip == 2) return mean.value() / area_;
  auto f = [&](double s, double& df) {
    CompensatedSum v;
    double d = 0.0;
    for (std::size_t k = 0; k < uq.size(); ++k) {
      v += wq[k] * pw.odd_pow(uq[k] - s);
      d += wq[k] * pw.abs_pow_m2(uq[k] - s);
    }
    df = -(p_ - 1.0) * d;
    return v.value();
  };
  double lo = *std::min_element(uq.begin(), uq.end());
  double hi = *std::max_element(uq.begin(), uq.end());
  if (lo == hi) return lo;
  double s = std::clamp(mean.value() / area_, lo, hi);
  for (int it = 0; it < 200; ++it) {
    double df = 0.0;
    const double v = f(s, df);
    if (v > 0.0) lo = s; else if (v < 0.0) hi = s; else return s;
    double next = df < 0.0 ? s - v / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(s), hi - lo)) {
      return next;
    }
    s = next;
  }
  return s;
}

double RayleighFunctional::quotient(const std::vector<double>& u) const {
  return gradient_energy(u) / lp_energy(u);
}

double RayleighFunctional::objective(const std::vector<double>& u) const {
  const double s = shift(u);
  std::vector<double> w(u);
  for (double& x : w) x -= s;
  return gradient_energy(u) / lp_energy(w);
}

double RayleighFunctional::objective_gradient(const std::vector<double>& u, std::vector<double>& grad) const {
  const Power pw(p_);
  const double s = shift(u);
  std::vector<double> dn(n_, 0.0);
  std::vector<double> dd(n_, 0.0);
  CompensatedSum num;
  CompensatedSum den;
  for (const Element& e : elements_) {
    const Vec2 g = u[e.v[0]] * e.grad[0] + u[e.v[1]] * e.grad[1] + u[e.v[2]] * e.grad[2];
    const double g2 = plb::dot(g, g);
    num += e.area * pw.grad_pow(g2);
    const double coef = e.area * p_ * pw.grad_pow_m2(g2);
    for (int i = 0; i < 3; ++i) dn[e.v[i]] += coef * plb::dot(g, e.grad[i]);
    for (int q = 0; q < kQuadPoints; ++q) {
      const double x = kBary[q][0] * u[e.v[0]] + kBary[q][1] * u[e.v[1]] + kBary[q][2] * u[e.v[2]] - s;
      const double w = e.area * kQuadWeights[q];
      den += w * pw.abs_pow(x);
      const double d = w * p_ * pw.odd_pow(x);
      for (int i = 0; i < 3; ++i) dd[e.v[i]] += d * kBary[q][i];
    }
  }
  const double n = num.value();
  const double d = den.value();
  const double value = n / d;
  grad.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) grad[i] = (dn[i] - value * dd[i]) / d;
  return value;
}

void RayleighFunctional::normalize(std::vector<double>& u) const {
  const double s = shift(u);
  for (double& x : u) x -= s;
  const double scale = std::pow(lp_energy(u), 1.0 / p_);
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("Rayleigh functional: constant function");
  for (double& x : u) x /= scale;
}

std::vector<std::vector<double>> initial_patterns(const Mesh& mesh, int starts, std::uint64_t seed) {
  if (starts < 1) throw ParameterError("rayleigh_minimize: starts must be >= 1");
  double cx = 0.0, cy = 0.0;
  for (Vec2 v : mesh.points) {
    cx += v.x;
    cy += v.y;
  }
  cx /= static_cast<double>(mesh.points.size());
  cy /= static_cast<double>(mesh.points.size());
  double extent = 0.0;
  for (Vec2 v : mesh.points) extent = std::max({extent, std::abs(v.x - cx), std::abs(v.y - cy)});
  std::vector<std::vector<double>> out;
  const std::size_t n = mesh.points.size();
  for (int k = 0; k < starts; ++k) {
    std::vector<double> u(n);
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = (mesh.points[i].x - cx) / extent;
      const double y = (mesh.points[i].y - cy) / extent;
      switch (k) {
        case 0: u[i] = x; break;
        case 1: u[i] = y; break;
        case 2: u[i] = x + y; break;
        case 3: u[i] = x - y; break;
        case 4: u[i] = x * y; break;
        case 5: u[i] = x * x - y * y; break;
        default: u[i] = uni(rng);
      }
    }
    out.push_back(std::move(u));
  }
  return out;
}

EigenEstimate rayleigh_minimize(const Mesh& mesh, double p, const RayleighOptions& opts) {
  if (!(p >= 2.0)) throw ParameterError("rayleigh_minimize: p < 2 is outside the supported range");
  if (opts.starts < 1) throw ParameterError("rayleigh_minimize: starts must be >= 1");
  const RayleighFunctional f(mesh, p);
  const std::size_t n = f.size();

  SparseMatrix k;
  SparseMatrix m;
  assemble_laplace(mesh, k, m);
  const SparseMatrix pre = k + m;
  Eigen::SimplicialLDLT<SparseMatrix> solver(pre);
  if (solver.info() != Eigen::Success) throw MeshingError("rayleigh_minimize: preconditioner factorization failed");
  auto precondition = [&](const std::vector<double>& g) {
    const Eigen::VectorXd z = solver.solve(to_eigen(g));
    return std::vector<double>(z.data(), z.data() + z.size());
  };

  EigenEstimate est;
  const auto starts = initial_patterns(mesh, opts.starts, opts.seed);

  if (opts.check_gradient) {
    std::vector<double> u = starts.front();
    f.normalize(u);
    std::vector<double> g;
    f.objective_gradient(u, g);
    std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(n);
    const double gnorm = std::sqrt(dot(g, g));
    for (std::size_t i = 0; i < n; ++i) v[i] = g[i] / gnorm + 0.5 * uni(rng) / std::sqrt(static_cast<double>(n));
    const double analytic = dot(g, v);
    const double eps = 1e-5;
    std::vector<double> up(u), um(u);
    for (std::size_t i = 0; i < n; ++i) {
      up[i] += eps * v[i];
      um[i] -= eps * v[i];
    }
    const double fd = (f.objective(up) - f.objective(um)) / (2.0 * eps);
    est.gradient_check_error = std::abs(fd - analytic) / std::abs(analytic);
    if (!(est.gradient_check_error < 1e-5)) {
      std::ostringstream msg;
      msg << "rayleigh_minimize: gradient check failed (relative error " << est.gradient_check_error << ")";
      throw InconsistencyError(msg.str());
    }
  }

  RunResult best;
  for (const auto& start : starts) {
    RunResult run;
    std::vector<double> u = start;
    f.normalize(u);
    std::vector<double> g;
    double value = f.objective_gradient(u, g);
    std::vector<double> z = precondition(g);
    double gz = dot(g, z);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = -z[i];
    double step = 1.0;
    int flat = 0;
    std::vector<double> trial(n);
    for (int it = 1; it <= opts.max_iterations; ++it) {
      run.iterations = it;
      double slope = dot(g, d);
      if (!(slope < 0.0)) {
        for (std::size_t i = 0; i < n; ++i) d[i] = -z[i];
        slope = -gz;
      }
      // Quadratic model through phi(0), phi'(0), phi(t0), then Armijo backtracking.
      double t = step;
      double trial_value = 0.0;
      bool accepted = false;
      for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] + t * d[i];
      trial_value = f.objective(trial);
      const double curvature = trial_value - value - slope * t;
      if (curvature > 0.0) {
        const double t_model = std::clamp(-slope * t * t / (2.0 * curvature), 0.1 * t, 10.0 * t);
        std::vector<double> alt(n);
        for (std::size_t i = 0; i < n; ++i) alt[i] = u[i] + t_model * d[i];
        const double alt_value = f.objective(alt);
        if (alt_value < trial_value) {
          t = t_model;
          trial_value = alt_value;
          trial.swap(alt);
        }
      }
      for (int ls = 0; ls < 60; ++ls) {
        if (trial_value <= value + 1e-4 * t * slope) {
          accepted = true;
          break;
        }
        t *= 0.5;
        for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] + t * d[i];
        trial_value = f.objective(trial);
      }
      if (!accepted) {
        run.converged = run.residual <= std::sqrt(opts.tolerance) || flat >= 5;
        break;
      }
      step = t;
      const double shift = f.shift(trial);
      for (double& x : trial) x -= shift;
      const double scale = std::pow(f.lp_energy(trial), 1.0 / p);
      for (std::size_t i = 0; i < n; ++i) {
        u[i] = trial[i] / scale;
        d[i] /= scale;
      }
      const double previous = value;
      value = f.objective_gradient(u, g);
      std::vector<double> z_new = precondition(g);
      const double gz_new = dot(g, z_new);
      double num = 0.0;
      for (std::size_t i = 0; i < n; ++i) num += g[i] * (z_new[i] - z[i] * scale);
      const double beta = std::max(0.0, num / (gz * scale * scale));
      for (std::size_t i = 0; i < n; ++i) d[i] = -z_new[i] + beta * d[i];
      z = std::move(z_new);
      gz = gz_new;
      run.residual = std::sqrt(std::max(gz, 0.0)) / value;
      if (run.residual <= opts.tolerance) {
        run.converged = true;
        break;
      }
      // Near-degenerate eigenvalues make the residual decay slowly while the
      // value has already settled; accept a sustained stall of the value.
      flat = previous - value <= 1e-3 * opts.tolerance * value ? flat + 1 : 0;
      if (flat >= 10) {
        run.converged = true;
        break;
      }
    }
    run.value = value;
    run.u = u;
    if (run.value < best.value) best = std::move(run);
  }

  est.coefficients = best.u;
  est.mu = f.quotient(best.u);
  est.iterations = best.iterations;
  est.residual = best.residual;
  est.constraint_violation =
      std::abs(f.constraint(best.u)) / std::pow(std::pow(f.lp_energy(best.u), 1.0 / p), p - 1.0);
  if (!best.converged) {
    std::ostringstream msg;
    msg << "rayleigh_minimize: no convergence within " << opts.max_iterations << " iterations (residual "
        << best.residual << ")";
    throw ConvergenceError(msg.str(), est);
  }
  return est;
}

double laplace_reference(const Mesh& mesh) {
  SparseMatrix k;
  SparseMatrix m;
  assemble_laplace(mesh, k, m);
  const SparseMatrix shifted = k + m;
  Eigen::SimplicialLDLT<SparseMatrix> solver(shifted);
  if (solver.info() != Eigen::Success) throw MeshingError("laplace_reference: factorization failed");
  const Eigen::Index n = k.rows();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd m_ones = m * ones;
  const double total = ones.dot(m_ones);

  // Subspace iteration on (K + M)^-1 M with Rayleigh-Ritz, constant mode deflated.
  constexpr Eigen::Index block = 4;
  Eigen::MatrixXd x(n, block);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec2 v = mesh.points[static_cast<std::size_t>(i)];
    x.row(i) << v.x, v.y, v.x * v.y, v.x * v.x - v.y * v.y;
  }
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    Eigen::MatrixXd y = solver.solve(m * x);
    for (Eigen::Index c = 0; c < block; ++c) y.col(c) -= (m_ones.dot(y.col(c)) / total) * ones;
    const Eigen::MatrixXd ky = y.transpose() * (k * y);
    const Eigen::MatrixXd my = y.transpose() * (m * y);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ritz(ky, my);
    x = y * ritz.eigenvectors();
    for (Eigen::Index c = 0; c < block; ++c) x.col(c) /= std::sqrt(x.col(c).dot(m * x.col(c)));
    const double next = ritz.eigenvalues()[0];
    if (it > 2 && std::abs(next - lambda) <= 1e-14 * next) return next;
    lambda = next;
  }
  return lambda;
}

}  // namespace plb
