#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "plb/domains.hpp"
#include "plb/errors.hpp"
#include "plb/quadrature.hpp"

using namespace plb;
constexpr double kPi = std::numbers::pi;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre is exact to degree 2n-1") {
  std::vector<double> x, w;
  for (int n : {4, 9, 64}) {
    gauss_legendre(n, x, w);
    for (int deg = 0; deg <= 2 * n - 1; deg += 3) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += w[i] * std::pow(x[i], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("disc rule integrates radial monomials") {
  const DiscRule rule = build_rule(16, 32);
  for (int k = 0; k <= 10; ++k) {
    // int_D |z|^(2k) = pi / (k + 1).
    CHECK(integrate(rule, [k](Complex z) { return std::pow(std::abs(z), 2 * k); }) ==
          doctest::Approx(kPi / (k + 1)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(build_rule(3, 32), ParameterError);
}

TEST_CASE("identity map norms") {
  const ConformalDomain disc = make_unit_disc();
  for (double a : {2.0, 3.0, 6.0}) {
    CHECK(std::abs(lalpha_norm(disc, a).value - std::pow(kPi, 1.0 / a)) < 1e-10);
  }
  CHECK(sup_norm(disc).value == 1.0);
  CHECK(std::abs(area(disc).value - kPi) < 1e-12);
}

TEST_CASE("epicycloid integrals by orthogonality of z^k") {
  // |1 + w|^2 and |1 + w|^4 with w = z^(n-1) keep only the diagonal terms.
  for (int n = 2; n <= 8; ++n) {
    const ConformalDomain d = make_epicycloid(n);
    CHECK(std::abs(area(d).value - kPi * (1.0 + 1.0 / n)) < 1e-8);
    const double l4 = kPi * (1.0 + 4.0 / n + 1.0 / (2.0 * n - 1.0));
    CHECK(lalpha_norm(d, 4.0).value == doctest::Approx(std::pow(l4, 0.25)).epsilon(1e-10));
    CHECK(lalpha_norm(d, HUGE_VAL).value == 2.0);
  }
}

TEST_CASE("epicycloid area against Monte Carlo") {
  for (int n : {2, 5}) {
    const int samples = 200000;
    const double mc = oracle::epicycloid_area_monte_carlo(n, samples, 11u + n);
    const double box = 4.0 * std::pow(1.0 + 1.0 / n, 2);
    const double frac = mc / box;
    const double sigma = box * std::sqrt(frac * (1.0 - frac) / samples);
    CHECK(std::abs(area(make_epicycloid(n)).value - mc) < 4.0 * sigma);
  }
}

TEST_CASE("sampled sup norm for maps without a closed form") {
  const ConformalDomain d("shifted", [](Complex z) { return z + 0.25 * z * z; },
                          [](Complex z) { return 1.0 + 0.5 * z; });
  const NormEstimate s = sup_norm(d);
  CHECK(s.sampled_sup);
  CHECK(s.value == doctest::Approx(1.5));
}

TEST_CASE("composition norm stays below its Hoelder bound") {
  std::vector<ConformalDomain> domains{make_unit_disc()};
  for (int n = 2; n <= 8; ++n) domains.push_back(make_epicycloid(n));
  const DiscRule rule = build_rule(32, 128);
  for (const auto& d : domains) {
    for (double p : {2.5, 3.0, 4.0, 6.0}) {
      for (double q : {1.0, 1.5, 2.0}) {
        const CompositionNorm c = composition_norm(d, p, q, rule);
        CHECK(c.value <= c.analytic_bound * (1.0 + 1e-9));
        CHECK(c.exponent == doctest::Approx((p - 2.0) * q / (p - q)));
      }
    }
  }
  CHECK_THROWS_AS(composition_norm(make_unit_disc(), 2.0, 1.5), ParameterError);
  CHECK_THROWS_AS(composition_norm(make_unit_disc(), 3.0, 2.5), ParameterError);
}

TEST_CASE("refinement failure reports both values") {
  // |phi'|^alpha with a singularity on the circle does not settle.
  const ConformalDomain bad("bad", [](Complex z) { return z; },
                            [](Complex z) { return 1.0 / std::sqrt(std::abs(1.0 - z)); });
  CHECK_THROWS_AS(lalpha_norm(bad, 4.0), AccuracyError);
}

}
