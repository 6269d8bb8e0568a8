#pragma once

#include <compare>
#include <optional>

namespace plb {

/// A positive real number held in log space.
///
/// The constants attached to quasidiscs reach exp(exp(10^26)), whose
/// logarithm no longer fits a double. Such values are stored one level
/// higher as ln|ln x| together with the sign of ln x (a "tower").
class Magnitude {
 public:
  Magnitude() = default;

  static Magnitude from_value(double x);
  static Magnitude from_log(double log_x);
  /// x = exp(sign * exp(log_abs_log)).
  static Magnitude from_log_log(double log_abs_log, int sign);

  /// Natural log of the value; +-inf for towers.
  double log() const noexcept { return tower_ ? sign_ * kInf : log_; }
  double log10() const noexcept;
  /// ln|ln x|; finite for towers and for every value != 1.
  double log_abs_log() const noexcept;
  /// Sign of ln x (0 when x == 1).
  int log_sign() const noexcept;
  bool is_tower() const noexcept { return tower_; }

  /// Linear value when |log10 x| < 300.
  std::optional<double> linear() const;

  Magnitude reciprocal() const noexcept;
  /// Product; adding a finite log to a tower leaves the tower unchanged
  /// unless the finite part is comparable to it.
  Magnitude operator*(const Magnitude& other) const;
  /// x^e for finite e.
  Magnitude pow(double e) const;

  friend std::partial_ordering operator<=>(const Magnitude& a, const Magnitude& b);
  friend bool operator==(const Magnitude& a, const Magnitude& b);

 private:
  static constexpr double kInf = __builtin_huge_val();

  double log_ = 0.0;       // valid when !tower_
  double log_abs_log_ = 0.0;  // valid when tower_
  int sign_ = 0;           // sign of ln x when tower_
  bool tower_ = false;
};

/// A real number strictly above `Base`, stored as ln(x - Base).
///
/// Integrability exponents of quasidiscs sit within 1e-13 (and for Ahlfors
/// curves within exp(-10^6)) of 2, far below double resolution at 2; the
/// offset form keeps them distinct. +inf is a valid value.
template <int Base>
class OffsetReal {
 public:
  constexpr OffsetReal() = default;

  static OffsetReal from_value(double x);
  static constexpr OffsetReal from_log_excess(double log_excess) {
    OffsetReal r;
    r.log_excess_ = log_excess;
    return r;
  }
  static constexpr OffsetReal infinity() { return from_log_excess(__builtin_huge_val()); }

  /// Base + exp(log_excess); rounds to Base when the excess is tiny.
  double value() const;
  /// x - Base; may underflow to zero.
  double excess() const;
  constexpr double log_excess() const noexcept { return log_excess_; }
  constexpr bool is_infinite() const noexcept { return log_excess_ == __builtin_huge_val(); }

  friend constexpr auto operator<=>(const OffsetReal& a, const OffsetReal& b) {
    return a.log_excess_ <=> b.log_excess_;
  }
  friend constexpr bool operator==(const OffsetReal& a, const OffsetReal& b) = default;

 private:
  double log_excess_ = 0.0;
};

/// Integrability exponent alpha in (2, inf].
using Alpha = OffsetReal<2>;
/// Inverse-Hoelder exponent kappa in (1, inf).
using Kappa = OffsetReal<1>;

}  // namespace plb
