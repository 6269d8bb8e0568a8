#pragma once

#include <cstdint>
#include <vector>

#include "plb/errors.hpp"
#include "plb/mesh.hpp"

namespace plb {

struct RayleighOptions {
  /// Number of initializations; the first six are fixed low-order patterns
  /// (x, y, x+y, x-y, xy, x^2-y^2), the rest seeded random.
  int starts = 8;
  std::uint64_t seed = 1;
  /// Stop when the preconditioned gradient norm relative to mu drops below
  /// this, or when mu has decreased by less than 1e-3 * tolerance (relative)
  /// over ten consecutive steps.
  double tolerance = 1e-9;
  int max_iterations = 4000;
  bool check_gradient = true;
};

struct EigenEstimate {
  double mu = 0.0;
  /// Per-vertex values of the minimizer, shifted onto the constraint and
  /// normalized to unit L_p norm.
  std::vector<double> coefficients;
  int iterations = 0;
  double residual = 0.0;
  /// |int |u|^(p-2) u| / ||u||_p^(p-1).
  double constraint_violation = 0.0;
  /// Relative directional finite-difference error of the gradient at the first start.
  double gradient_check_error = 0.0;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, EigenEstimate best) : Error(what), best_(std::move(best)) {}
  const EigenEstimate& best() const noexcept { return best_; }

 private:
  EigenEstimate best_;
};

/// Discrete Rayleigh functional on P1 elements:
///   G(u) = int |grad u|^p / min_c int |u - c|^p.
/// The minimizing shift c = s(u) solves int |u - s|^(p-2) (u - s) = 0, so G
/// restricted to the constraint set is the Rayleigh quotient, and G is
/// invariant under u -> a u + b.
class RayleighFunctional {
 public:
  RayleighFunctional(const Mesh& mesh, double p);

  std::size_t size() const noexcept { return n_; }
  double p() const noexcept { return p_; }

  /// int |grad u|^p, exact per triangle.
  double gradient_energy(const std::vector<double>& u) const;
  /// int |u|^p by a degree-4 six-point triangle rule.
  double lp_energy(const std::vector<double>& u) const;
  /// int |u|^(p-2) u with the same rule.
  double constraint(const std::vector<double>& u) const;
  /// Root of s -> int |u - s|^(p-2) (u - s).
  double shift(const std::vector<double>& u) const;

  /// int |grad u|^p / int |u|^p for u as given.
  double quotient(const std::vector<double>& u) const;
  double objective(const std::vector<double>& u) const;
  /// Gradient of objective(); returns the objective value.
  double objective_gradient(const std::vector<double>& u, std::vector<double>& grad) const;

  /// Shifts onto the constraint and scales to unit L_p norm.
  void normalize(std::vector<double>& u) const;

  double area() const noexcept { return area_; }

 private:
  struct Element {
    std::array<int, 3> v;
    double area;
    std::array<Vec2, 3> grad;
  };
  std::size_t n_;
  double p_;
  double area_ = 0.0;
  std::vector<Element> elements_;
};

/// Minimizes the discrete Rayleigh quotient from several starts by
/// preconditioned nonlinear conjugate gradients (preconditioner: P1 stiffness
/// plus mass). Requires p >= 2. Throws ConvergenceError carrying the best
/// iterate when no start converges within max_iterations.
EigenEstimate rayleigh_minimize(const Mesh& mesh, double p, const RayleighOptions& opts = {});

/// Initial vectors used by rayleigh_minimize.
std::vector<std::vector<double>> initial_patterns(const Mesh& mesh, int starts, std::uint64_t seed);

/// Second-smallest eigenvalue of K x = lambda M x (P1 stiffness and mass),
/// the discrete first nontrivial Neumann Laplace eigenvalue.
double laplace_reference(const Mesh& mesh);

}  // namespace plb
