#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

namespace oracle {

namespace {

constexpr long double kPiL = std::numbers::pi_v<long double>;

Big big_pi() { return boost::math::constants::pi<Big>(); }

Big inverse_holder_scale() {
  const Big pi = big_pi();
  const Big a = 2 + pi * pi;
  return pi * pi * a * a / log(Big(3));
}

}  // namespace

long double log_delta_factor(long double p, long double q, long double excess) {
  const long double tail = std::isinf(excess) ? 1.0L / p : excess / (p * (2.0L + excess));
  const long double d = 1.0L / q - tail;
  const long double gap = (0.5L - 1.0L / q) + tail;
  if (!(gap > 0.0L)) return std::numeric_limits<long double>::quiet_NaN();
  return (1.0L - d) * p * std::log((1.0L - d) / gap);
}

long double q_grid_min(long double p, long double excess, long double step) {
  long double best = std::numeric_limits<long double>::infinity();
  const long n = std::lround(1.0L / step);
  for (long k = 0; k <= n; ++k) {
    const long double v = log_delta_factor(p, 1.0L + static_cast<long double>(k) / n, excess);
    if (!std::isnan(v)) best = std::min(best, v);
  }
  return best;
}

Big log_nu(const Big& lambda, const Big& log_k) {
  const Big e = exp(lambda);
  const Big a = 2 + e;
  const Big pi = big_pi();
  return 4 * a * log(Big(10)) + lambda - log(1 + e) + a * (log(24 * pi * pi) + 2 * log_k);
}

Big gamma_star_lambda(const Big& log_k) {
  Big lo = -1;
  while (log_nu(lo, log_k) > 0) lo *= 2;
  Big hi = 10;
  for (int i = 0; i < 400; ++i) {
    const Big mid = (lo + hi) / 2;
    if (log_nu(mid, log_k) < 0) lo = mid; else hi = mid;
  }
  return (lo + hi) / 2;
}

Big log_c_alpha(const Big& lambda, const Big& log_k) {
  const Big e = exp(lambda);
  const Big a = 2 + e;
  const Big one_minus_nu = 1 - exp(log_nu(lambda, log_k));
  return 6 * log(Big(10)) - log((a - 1) * one_minus_nu) / a;
}

long double m_p_grid(long double p, long double k, int lambda_points, int q_points) {
  const long double log_k = std::log(k);
  const long double lambda_gamma = static_cast<long double>(gamma_star_lambda(Big(log_k)));
  long double top = lambda_gamma;
  if (k > 1.0L) top = std::min(top, std::log(2.0L / (k * k - 1.0L)));
  const long double base = std::log(24.0L * kPiL * kPiL * k * k);
  long double best = std::numeric_limits<long double>::infinity();
  for (int i = 0; i < lambda_points; ++i) {
    const long double lambda = top - 8.0L + 8.0L * i / lambda_points;
    const long double e = std::exp(lambda);
    const long double a = 2.0L + e;
    const long double ln_nu = 4.0L * a * std::log(10.0L) + lambda - std::log1p(e) + a * base;
    if (!(ln_nu < 0.0L)) continue;
    const long double ln_c = 6.0L * std::log(10.0L) - (std::log1p(e) + std::log(-std::expm1(ln_nu))) / a;
    for (int j = 0; j < q_points; ++j) {
      const long double q = 1.0L + static_cast<long double>(j) / (q_points - 1);
      const long double g = log_delta_factor(p, q, e);
      if (!std::isnan(g)) best = std::min(best, g + 2.0L * ln_c);
    }
  }
  const long double ih = kPiL * kPiL * std::pow(2.0L + kPiL * kPiL, 2.0L) / std::log(3.0L);
  return 0.5L * p * std::log(kPiL) - (p - 2.0L) * std::log(2.0L) - 2.0L * log_k - 0.5L * k * k * ih - best;
}

Big ahlfors_log_inverse_mu(const Big& p, const Big& q, const Big& lambda, const Big& exponent_e,
                           const Big& nu_log_base, const Big& area) {
  const Big e = exp(lambda);
  const Big a = 2 + e;
  const Big tail = e / (p * a);
  const Big d = 1 / q - tail;
  const Big g = (1 - d) * p * log((1 - d) / ((Big(1) / 2 - 1 / q) + tail));
  const Big ln_nu = 4 * a * log(Big(10)) + lambda - log(1 + e) + a * nu_log_base;
  const Big ln_c = 6 * log(Big(10)) - log((a - 1) * (1 - exp(ln_nu))) / a;
  const Big ln2 = log(Big(2));
  return g + 2 * ln_c + (p - 22) * ln2 + exponent_e - p / 2 * log(big_pi()) +
         inverse_holder_scale() * exp(exponent_e) / pow(Big(2), 21) + p / 2 * log(area);
}

Big ahlfors_x(const Big& c, int pi_multiple) {
  const Big y = 1 + exp(pi_multiple * big_pi()) * pow(c, 5);
  return y * y;
}

double epicycloid_area_monte_carlo(int n, int samples, unsigned seed) {
  std::vector<plb::Vec2> poly;
  constexpr int m = 8192;
  for (int k = 0; k < m; ++k) {
    const std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
    const std::complex<double> w = z + std::pow(z, n) / static_cast<double>(n);
    poly.push_back({w.real(), w.imag()});
  }
  const double r = 1.0 + 1.0 / n;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-r, r);
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    if (inside(poly, {uni(rng), uni(rng)})) ++hits;
  }
  return 4.0 * r * r * hits / samples;
}

double brute_diameter(const std::vector<plb::Vec2>& v) {
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) best = std::max(best, plb::distance(v[i], v[j]));
  }
  return best;
}

double brute_bounded_turning(const std::vector<plb::Vec2>& v) {
  const std::size_t n = v.size();
  auto arc_diam = [&](std::size_t from, std::size_t len) {
    double d = 0.0;
    for (std::size_t a = 0; a <= len; ++a) {
      for (std::size_t b = a + 1; b <= len; ++b) d = std::max(d, plb::distance(v[(from + a) % n], v[(from + b) % n]));
    }
    return d;
  };
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double arc = std::min(arc_diam(i, j - i), arc_diam(j, n - (j - i)));
      best = std::max(best, arc / plb::distance(v[i], v[j]));
    }
  }
  return best;
}

bool inside(const std::vector<plb::Vec2>& v, plb::Vec2 x) {
  bool in = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > x.y) != (v[j].y > x.y) &&
        x.x < (v[j].x - v[i].x) * (x.y - v[i].y) / (v[j].y - v[i].y) + v[i].x) {
      in = !in;
    }
  }
  return in;
}

}  // namespace oracle
