#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "plb/bounds.hpp"
#include "plb/errors.hpp"

using namespace plb;
using oracle::Big;
constexpr double kPi = std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("delta and the half gap") {
  CHECK(delta(3.0, 2.0, Alpha::infinity()) == doctest::Approx(0.5 - 1.0 / 3.0));
  CHECK(delta(4.0, 1.5, Alpha::from_value(4.0)) == doctest::Approx(1.0 / 1.5 - 2.0 / 16.0));
  // The gap stays resolved when alpha - 2 is far below double spacing at 2.
  const Alpha a = Alpha::from_log_excess(-60.0);
  CHECK(half_gap(3.0, 2.0, a) == doctest::Approx(std::exp(-60.0) / 6.0).epsilon(1e-14));
  CHECK_FALSE(log_delta_factor(3.0, 1.0, Alpha::from_value(2.5)).has_value());
}

TEST_CASE("q-infimum against a 1e-4 grid") {
  for (double p : {2.0, 2.5, 3.0, 4.0, 6.0, 11.0}) {
    for (double excess : {1e-10, 0.5, 1.0, 2.0, 6.0, HUGE_VAL}) {
      const Alpha a = std::isinf(excess) ? Alpha::infinity() : Alpha::from_log_excess(std::log(excess));
      const QOptimum opt = minimize_delta_factor(p, a);
      const long double grid = oracle::q_grid_min(p, excess);
      CHECK(opt.log_factor <= static_cast<double>(grid) + 1e-12 * std::abs(static_cast<double>(grid)));
      CHECK(rel(opt.log_factor, static_cast<double>(grid)) < 1e-9);
    }
  }
}

TEST_CASE("infinity-regular constant in closed form") {
  // At q = 2: (1-d)/(1/2-d) = (p+2)/2 with exponent (p+2)/2.
  for (double p : {2.0, 2.5, 3.0, 4.0, 7.5}) {
    const ConformalConstant c = theorem_b_constant(p, Alpha::infinity());
    const double expected = p * std::log(2.0) + (1.0 - 0.5 * p) * std::log(kPi) +
                            0.5 * (p + 2.0) * std::log(0.5 * (p + 2.0));
    CHECK(rel(c.c_p.log(), expected) < 1e-13);
    CHECK(c.q.q == 2.0);
  }
}

TEST_CASE("epicycloid closed form reproduced through the infinity-regular route") {
  for (int n = 2; n <= 8; ++n) {
    for (double p : {2.5, 3.0, 4.0}) {
      const double area = kPi * std::pow((n + 1.0) / n, 2);
      const BoundReport r = theorem_b_bound(p, Alpha::infinity(), area, 2.0);
      const long double inf_q = std::exp(oracle::q_grid_min(p, HUGE_VAL, 1.0L / 64));
      const long double display = std::pow(2.0L, p + 2.0L) * std::pow((n + 1.0L) / n, p - 2.0L) * inf_q;
      CHECK(rel(1.0 / *r.mu_lower.linear(), static_cast<double>(display)) < 1e-12);
      CHECK(r.route == Route::corollary_34);
    }
  }
}

TEST_CASE("theorem B constant matches the closed form for finite alpha") {
  for (double p : {2.5, 3.0, 5.0}) {
    for (double alpha : {2.5, 4.0, 10.0}) {
      const ConformalConstant c = theorem_b_constant(p, Alpha::from_value(alpha));
      const long double expected = p * std::log(2.0L) + ((alpha - 2.0L) / alpha - p / 2.0L) * std::log(kPi) +
                                   oracle::q_grid_min(p, alpha - 2.0L);
      CHECK(rel(c.c_p.log(), static_cast<double>(expected)) < 1e-9);
    }
  }
  const BoundReport r = theorem_b_bound(3.0, Alpha::from_value(4.0), 2.0, 1.7);
  const double inv = r.c_p->log() + 0.5 * std::log(2.0) + 2.0 * std::log(1.7);
  CHECK(rel(-r.mu_lower.log(), inv) < 1e-14);
  CHECK(r.m_p.log() == doctest::Approx(r.mu_lower.log() + 1.5 * std::log(2.0)));
  CHECK_THROWS_AS(theorem_b_bound(3.0, Alpha::from_value(4.0), -1.0, 1.0), ParameterError);
}

TEST_CASE("gamma* solves nu = 1") {
  for (double k : {1.0, 1.5, 2.0, 5.0}) {
    const Alpha g = gamma_star(std::log(k));
    const Big ln_nu = oracle::log_nu(Big(g.log_excess()), Big(std::log(k)));
    CHECK(abs(exp(ln_nu) - 1) < 1e-10);
    const Big lambda = oracle::gamma_star_lambda(Big(std::log(k)));
    CHECK(std::abs(g.log_excess() - static_cast<double>(lambda)) < 1e-12 * std::abs(static_cast<double>(lambda)));
  }
}

TEST_CASE("nu is increasing in alpha") {
  for (double k : {1.0, 1.5, 3.0}) {
    const double top = gamma_star(std::log(k)).log_excess();
    double previous = -HUGE_VAL;
    for (int i = 0; i < 100; ++i) {
      const double lambda = top - 20.0 + 25.0 * i / 99.0;
      const double v = log_nu(Alpha::from_log_excess(lambda), std::log(k));
      CHECK(v > previous);
      previous = v;
    }
  }
  CHECK(nu(3.0, 1.0) == doctest::Approx(1e12 * 0.5 * std::pow(24.0 * kPi * kPi, 3.0)).epsilon(1e-12));
}

TEST_CASE("C_alpha against multiprecision") {
  for (double k : {1.0, 1.5, 2.0, 5.0}) {
    const double lambda = gamma_star(std::log(k)).log_excess() + std::log(0.99);
    const double lc = log_c_alpha(Alpha::from_log_excess(lambda), std::log(k));
    const Big expected = oracle::log_c_alpha(Big(lambda), Big(std::log(k)));
    CHECK(rel(lc, static_cast<double>(expected)) < 1e-12);
  }
  CHECK_THROWS_AS(log_c_alpha(Alpha::from_value(3.0), 0.0), InfeasibleError);
}

TEST_CASE("inverse Hoelder exponential factor") {
  const Big pi = boost::math::constants::pi<Big>();
  const Big ih = pi * pi * (2 + pi * pi) * (2 + pi * pi) / log(Big(3));
  CHECK(rel(inverse_holder_exponent_scale(), static_cast<double>(ih)) < 1e-15);
  // K = 1 gives IH / 2 = 632.846...
  const InverseHolder h = inverse_holder_constant(Kappa::from_log_excess(-40.0), 1.0);
  CHECK(rel(h.log_exp_factor, static_cast<double>(ih / 2)) < 1e-12);
  CHECK_THROWS_AS(inverse_holder_constant(Kappa::from_value(3.0), 2.0), InfeasibleError);
  CHECK_THROWS_AS(inverse_holder_constant(Kappa::from_value(1.5), 1.0), InfeasibleError);
}

TEST_CASE("conformal derivative bound against multiprecision") {
  const double k = 1.2;
  const double lambda = gamma_star(std::log(k)).log_excess() - 1.0;
  const Magnitude m = conformal_derivative_bound(Alpha::from_log_excess(lambda), k, 3.0);
  const Big a = 2 + exp(Big(lambda));
  const Big pi = boost::math::constants::pi<Big>();
  const Big ih = pi * pi * (2 + pi * pi) * (2 + pi * pi) / log(Big(3));
  const Big expected = oracle::log_c_alpha(Big(lambda), log(Big(k))) + log(Big(k)) + (2 - a) / (2 * a) * log(pi) -
                       log(Big(2)) + Big(k) * k * ih / 4 + log(Big(3)) / 2;
  CHECK(rel(m.log(), static_cast<double>(expected)) < 1e-13);
  CHECK_THROWS_AS(conformal_derivative_bound(Alpha::from_value(2.5), 1.2, 1.0), InfeasibleError);
  CHECK_THROWS_AS(conformal_derivative_bound(Alpha::from_value(5.0), 1.2, 1.0), InfeasibleError);
}

TEST_CASE("M_p against the exhaustive (alpha, q) grid") {
  for (double p : {2.5, 3.0, 4.0, 6.0}) {
    for (double k : {1.05, 1.2, 2.0, 5.0}) {
      const MpResult m = m_p(p, std::log(k));
      const double grid = static_cast<double>(oracle::m_p_grid(p, k, 400, 101));
      CHECK(rel(m.m_p.log(), grid) < 1e-4);
      // The optimizer may only improve on the grid.
      CHECK(m.m_p.log() >= grid - 1e-9 * std::abs(grid));
      CHECK(m.window.alpha < m.window.alpha_star);
    }
  }
}

TEST_CASE("M_p decreases with K") {
  double previous = HUGE_VAL;
  for (double k = 1.05; k <= 4.0; k += 0.25) {
    const double v = m_p(3.0, std::log(k)).m_p.log();
    CHECK(v < previous);
    previous = v;
  }
  CHECK_THROWS_AS(m_p(2.0, 0.1), ParameterError);
  CHECK_THROWS_AS(m_p(3.0, -0.1), ParameterError);
}

TEST_CASE("theorem A report") {
  const QuasidiscSpec spec = make_star_spec(0.4, 2.5);
  const BoundReport r = theorem_a_bound(3.0, spec);
  const MpResult m = m_p(3.0, spec.log_k);
  CHECK(r.mu_lower.log() == doctest::Approx(m.m_p.log() - 1.5 * std::log(2.5)));
  CHECK(r.m_p_star.log() == doctest::Approx(m.m_p.log() - 1.5 * std::log(kPi)));
  CHECK(r.r_star == doctest::Approx(std::sqrt(2.5 / kPi)));
  CHECK(r.alpha_star_discrepancy);
  CHECK(*r.beta == 0.4);
}

TEST_CASE("theorem C against multiprecision") {
  for (double c : {1.0, 1.3, 2.0}) {
    const BoundReport r = theorem_c_bound(3.0, c, 2.0);
    CHECK(r.mu_lower.is_tower());
    const Big x = oracle::ahlfors_x(Big(c), 2);
    const Big log_k = x - 10 * log(Big(2));
    const Big pi = boost::math::constants::pi<Big>();
    const Big inv = oracle::ahlfors_log_inverse_mu(Big(3), Big(r.chosen_q), Big(r.chosen_alpha.log_excess()), 2 * x,
                                                   log(24 * pi * pi) + 2 * log_k, Big(2));
    CHECK(rel(r.mu_lower.log_abs_log(), static_cast<double>(log(inv))) < 1e-14);
    CHECK(rel(*r.log_k, static_cast<double>(log_k)) < 1e-15);
    // The chosen alpha is strictly inside the window.
    CHECK(static_cast<double>(oracle::log_nu(Big(r.chosen_alpha.log_excess()), log_k)) < 0.0);
  }
  CHECK_THROWS_AS(theorem_c_bound(3.0, 0.5, 1.0), ParameterError);
}

TEST_CASE("snowflake bound against multiprecision") {
  for (double t : {0.25, 0.3, 0.4}) {
    const BoundReport r = snowflake_bound(3.0, t, 1.5);
    const Big c = Big(16) / (1 - 2 * Big(t));
    const Big pi = boost::math::constants::pi<Big>();
    const Big ih = pi * pi * (2 + pi * pi) * (2 + pi * pi) / log(Big(3));
    const Big expected = log(ih) + 4 * oracle::ahlfors_x(c, 4) - 21 * log(Big(2));
    CHECK(rel(r.mu_lower.log_abs_log(), static_cast<double>(expected)) < 4e-15);
    CHECK(r.mu_lower.log_sign() == -1);
    CHECK(rel(*r.ahlfors_c, static_cast<double>(c)) < 1e-15);
    // ln(alpha - 2) is of order -X4, so only the report's own ln nu resolves the window.
    const Big nu_base = log(3 * pi * pi) - 17 * log(Big(2)) + 4 * oracle::ahlfors_x(c, 2);
    const Big lambda(r.chosen_alpha.log_excess());
    const Big ln_nu = 4 * (2 + exp(lambda)) * log(Big(10)) + lambda - log(1 + exp(lambda)) + (2 + exp(lambda)) * nu_base;
    CHECK(abs(ln_nu - *r.log_nu_at_alpha) < 1e-14 * abs(lambda));
    CHECK(*r.log_nu_at_alpha < 0.0);
  }
  CHECK_THROWS_AS(snowflake_bound(3.0, 0.5, 1.0), ParameterError);
}

TEST_CASE("theorem A never beats theorem B on a common domain") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const double p = 2.1 + 6.0 * u(rng);
    const double area = 0.1 + 10.0 * u(rng);
    const double k = 1.01 + 4.0 * u(rng);
    const double norm = 1.0 + 5.0 * u(rng);
    const BoundReport a = theorem_a_bound(p, make_direct_spec(k, area));
    const BoundReport b = theorem_b_bound(p, Alpha::infinity(), area, norm);
    CHECK(a.mu_lower <= b.mu_lower);
  }
}

TEST_CASE("Szegoe-Weinberger upper bound and route names") {
  CHECK(szego_weinberger_upper(kPi) == doctest::Approx(kBesselPrimeZero * kBesselPrimeZero));
  for (Route r : {Route::theorem_b, Route::corollary_34, Route::theorem_a, Route::theorem_c, Route::snowflake}) {
    CHECK(route_from_name(route_name(r)) == r);
  }
  CHECK_THROWS_AS(route_from_name("theorem_Z"), ParameterError);
  CHECK(quasiconformity_from_ahlfors(1.0) == doctest::Approx(std::pow(1.0 + std::exp(2.0 * kPi), 2) - 10.0 * std::log(2.0)));
}

}
