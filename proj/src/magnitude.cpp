#include "plb/magnitude.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plb/errors.hpp"

namespace plb {

namespace {

// ln of the largest finite double, with headroom.
constexpr double kTowerThreshold = 700.0;
constexpr double kLn10 = 2.302585092994045684;

}  // namespace

Magnitude Magnitude::from_value(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ParameterError("Magnitude::from_value: value must be positive and finite");
  }
  return from_log(std::log(x));
}

Magnitude Magnitude::from_log(double log_x) {
  if (std::isnan(log_x)) throw ParameterError("Magnitude::from_log: NaN");
  Magnitude m;
  if (std::isinf(log_x)) {
    m.tower_ = true;
    m.sign_ = log_x > 0 ? 1 : -1;
    m.log_abs_log_ = kInf;
    return m;
  }
  m.log_ = log_x;
  return m;
}

Magnitude Magnitude::from_log_log(double log_abs_log, int sign) {
  if (std::isnan(log_abs_log)) throw ParameterError("Magnitude::from_log_log: NaN");
  if (sign == 0) return from_log(0.0);
  sign = sign > 0 ? 1 : -1;
  if (log_abs_log < kTowerThreshold) return from_log(sign * std::exp(log_abs_log));
  Magnitude m;
  m.tower_ = true;
  m.sign_ = sign;
  m.log_abs_log_ = log_abs_log;
  return m;
}

double Magnitude::log10() const noexcept { return log() / kLn10; }

double Magnitude::log_abs_log() const noexcept {
  if (tower_) return log_abs_log_;
  return std::log(std::abs(log_));
}

int Magnitude::log_sign() const noexcept {
  if (tower_) return sign_;
  return (log_ > 0) - (log_ < 0);
}

std::optional<double> Magnitude::linear() const {
  if (tower_ || std::abs(log_) >= 300.0 * kLn10) return std::nullopt;
  return std::exp(log_);
}

Magnitude Magnitude::reciprocal() const noexcept {
  Magnitude m = *this;
  if (tower_) {
    m.sign_ = -sign_;
  } else {
    m.log_ = -log_;
  }
  return m;
}

Magnitude Magnitude::operator*(const Magnitude& other) const {
  if (!tower_ && !other.tower_) return from_log(log_ + other.log_);
  if (tower_ && other.tower_) {
    if (sign_ == other.sign_) {
      // ln(e^a + e^b) for same-signed towers.
      const double hi = std::max(log_abs_log_, other.log_abs_log_);
      const double lo = std::min(log_abs_log_, other.log_abs_log_);
      return from_log_log(hi + std::log1p(std::exp(lo - hi)), sign_);
    }
    if (log_abs_log_ == other.log_abs_log_) return from_log(0.0);
    const bool this_wins = log_abs_log_ > other.log_abs_log_;
    const double hi = this_wins ? log_abs_log_ : other.log_abs_log_;
    const double lo = this_wins ? other.log_abs_log_ : log_abs_log_;
    return from_log_log(hi + std::log1p(-std::exp(lo - hi)), this_wins ? sign_ : other.sign_);
  }
  const Magnitude& t = tower_ ? *this : other;
  const double finite = tower_ ? other.log_ : log_;
  if (finite == 0.0 || !std::isfinite(t.log_abs_log_)) return t;
  // sign*e^L + f = sign*e^L * (1 + sign*f*e^-L)
  const double rel = t.sign_ * finite * std::exp(-t.log_abs_log_);
  return from_log_log(t.log_abs_log_ + std::log1p(rel), t.sign_);
}

Magnitude Magnitude::pow(double e) const {
  if (!tower_) return from_log(log_ * e);
  if (e == 0.0) return from_log(0.0);
  const int s = e > 0 ? sign_ : -sign_;
  return from_log_log(log_abs_log_ + std::log(std::abs(e)), s);
}

std::partial_ordering operator<=>(const Magnitude& a, const Magnitude& b) {
  const int ka = a.tower_ ? a.sign_ : 0;
  const int kb = b.tower_ ? b.sign_ : 0;
  if (ka != kb) return ka <=> kb;
  if (ka == 0) return a.log_ <=> b.log_;
  if (ka > 0) return a.log_abs_log_ <=> b.log_abs_log_;
  return b.log_abs_log_ <=> a.log_abs_log_;
}

bool operator==(const Magnitude& a, const Magnitude& b) {
  return (a <=> b) == std::partial_ordering::equivalent;
}

template <int Base>
OffsetReal<Base> OffsetReal<Base>::from_value(double x) {
  if (std::isnan(x) || !(x > Base)) {
    throw ParameterError("exponent must exceed " + std::to_string(Base));
  }
  if (std::isinf(x)) return infinity();
  return from_log_excess(std::log(x - Base));
}

template <int Base>
double OffsetReal<Base>::value() const {
  return Base + std::exp(log_excess_);
}

template <int Base>
double OffsetReal<Base>::excess() const {
  return std::exp(log_excess_);
}

template class OffsetReal<1>;
template class OffsetReal<2>;

}  // namespace plb
