#include "plb/domains.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "plb/errors.hpp"

namespace plb {

ConformalDomain::ConformalDomain(std::string label, ComplexMap map, ComplexMap derivative,
                                 std::optional<double> known_area,
                                 std::optional<double> known_sup_derivative)
    : label_(std::move(label)),
      map_(std::move(map)),
      derivative_(std::move(derivative)),
      known_area_(known_area),
      known_sup_derivative_(known_sup_derivative) {}

ConformalDomain make_unit_disc() {
  return ConformalDomain(
      "disc", [](Complex z) { return z; }, [](Complex) { return Complex(1.0, 0.0); },
      std::numbers::pi, 1.0);
}

ConformalDomain make_epicycloid(int n) {
  if (n < 2) throw ParameterError("epicycloid: n must be >= 2");
  const double inv_n = 1.0 / n;
  // Integer powers keep the boundary exact at the cusp preimages.
  auto power = [](Complex z, int k) {
    Complex r(1.0, 0.0);
    Complex b = z;
    while (k > 0) {
      if (k & 1) r *= b;
      b *= b;
      k >>= 1;
    }
    return r;
  };
  return ConformalDomain(
      "epicycloid:" + std::to_string(n),
      [=](Complex z) { return z + inv_n * power(z, n); },
      [=](Complex z) { return 1.0 + power(z, n - 1); }, std::nullopt, 2.0);
}

double star_quasiconformality(double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) throw ParameterError("beta must lie in [0, 1)");
  const double c = 1.0 / std::tan((1.0 - beta) * std::numbers::pi / 4.0);
  return c * c;
}

QuasidiscSpec make_direct_spec(double k, double area) {
  if (!(k >= 1.0) || !std::isfinite(k)) throw ParameterError("K must be finite and >= 1");
  if (!(area > 0.0)) throw ParameterError("area must be positive");
  return {std::log(k), area, {}};
}

QuasidiscSpec make_star_spec(double beta, double area) {
  const double k = star_quasiconformality(beta);
  if (!(area > 0.0)) throw ParameterError("area must be positive");
  QuasidiscSpec s{std::log(k), area, {}};
  s.provenance.kind = Provenance::Kind::star;
  s.provenance.beta = beta;
  return s;
}

QuasidiscSpec make_spiral_spec(double beta, double gamma, double area) {
  QuasidiscSpec s = make_star_spec(beta, area);
  if (!(std::abs(gamma) < beta * std::numbers::pi / 2.0)) {
    throw ParameterError("spiral: |gamma| must be < beta pi / 2");
  }
  s.provenance.kind = Provenance::Kind::spiral;
  s.provenance.gamma = gamma;
  return s;
}

namespace {

class ChoiceStream {
 public:
  explicit ChoiceStream(const SnowflakeChoices& c) : choices_(c), rng_(c.seed) {}

  bool next_is_tent() {
    switch (choices_.kind) {
      case SnowflakeChoices::Kind::all_flat:
        return false;
      case SnowflakeChoices::Kind::all_tent:
        return true;
      case SnowflakeChoices::Kind::seeded_random:
        // Top bit of mt19937_64 output: portable, unlike std::bernoulli_distribution.
        return (rng_() >> 63) != 0;
      case SnowflakeChoices::Kind::explicit_bits: {
        if (pos_ >= choices_.bits.size()) {
          throw ParameterError("snowflake: explicit choice string too short (" +
                               std::to_string(choices_.bits.size()) + " bits)");
        }
        const char b = choices_.bits[pos_++];
        if (b != '0' && b != '1') throw ParameterError("snowflake: choice bits must be 0 or 1");
        return b == '1';
      }
    }
    return false;
  }

 private:
  const SnowflakeChoices& choices_;
  std::mt19937_64 rng_;
  std::size_t pos_ = 0;
};

}  // namespace

PolygonalCurve generate_rohde_snowflake(const SnowflakeParams& params) {
  if (!(params.t >= 0.25 && params.t < 0.5)) {
    throw ParameterError("snowflake: t must lie in [1/4, 1/2)");
  }
  if (params.depth < 1) throw ParameterError("snowflake: depth must be >= 1");
  if (params.depth > 8) throw ParameterError("snowflake: depth > 8 is beyond desk scale");

  std::vector<Vec2> poly{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  const double t = params.t;
  const double height = std::sqrt(t - 0.25);
  ChoiceStream choices(params.choices);

  for (int stage = 1; stage < params.depth; ++stage) {
    std::vector<Vec2> next;
    next.reserve(poly.size() * 4);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec2 a = poly[i];
      const Vec2 b = poly[(i + 1) % poly.size()];
      const Vec2 d = b - a;
      next.push_back(a);
      if (choices.next_is_tent()) {
        // Right-hand normal points outward on a counterclockwise curve.
        const Vec2 outward{d.y, -d.x};
        next.push_back(a + t * d);
        next.push_back(a + 0.5 * d + height * outward);
        next.push_back(a + (1.0 - t) * d);
      } else {
        next.push_back(a + 0.25 * d);
        next.push_back(a + 0.5 * d);
        next.push_back(a + 0.75 * d);
      }
    }
    poly = std::move(next);
  }

  PolygonalCurve curve(std::move(poly));
  if (!curve.is_simple()) {
    std::ostringstream msg;
    msg << "snowflake: stage " << params.depth << " with t=" << t << " is self-intersecting";
    throw ConstructionError(msg.str());
  }
  return curve;
}

PolygonalCurve boundary_polyline(const ConformalDomain& domain, int m) {
  if (m < 16) throw ParameterError("boundary_polyline: m must be >= 16");
  std::vector<Vec2> v;
  v.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / m;
    const Complex w = domain.map(std::polar(1.0, theta));
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      throw ParameterError("boundary_polyline: map is not finite on the unit circle");
    }
    v.push_back({w.real(), w.imag()});
  }
  return PolygonalCurve(std::move(v));
}

PolygonalCurve boundary_polyline_arclength(const ConformalDomain& domain, double spacing) {
  if (!(spacing > 0.0)) throw ParameterError("boundary_polyline_arclength: spacing must be > 0");
  constexpr int kDense = 16384;
  std::vector<double> cumulative(kDense + 1, 0.0);
  Complex prev = domain.map(Complex(1.0, 0.0));
  for (int k = 1; k <= kDense; ++k) {
    const Complex w = domain.map(std::polar(1.0, 2.0 * std::numbers::pi * k / kDense));
    cumulative[k] = cumulative[k - 1] + std::abs(w - prev);
    prev = w;
  }
  const double length = cumulative.back();
  const int n = std::max(16, static_cast<int>(std::ceil(length / spacing)));
  std::vector<Vec2> v;
  v.reserve(static_cast<std::size_t>(n));
  int seg = 0;
  for (int j = 0; j < n; ++j) {
    const double target = length * j / n;
    while (seg < kDense - 1 && cumulative[seg + 1] < target) ++seg;
    const double span = cumulative[seg + 1] - cumulative[seg];
    const double frac = span > 0.0 ? (target - cumulative[seg]) / span : 0.0;
    const double theta = 2.0 * std::numbers::pi * (seg + frac) / kDense;
    const Complex w = domain.map(std::polar(1.0, theta));
    v.push_back({w.real(), w.imag()});
  }
  return PolygonalCurve(std::move(v));
}

}  // namespace plb
