#pragma once

#include "l1disc/rational.hpp"

#include <mpfr.h>

#include <string>

namespace l1disc {

/// Closed interval [lo, hi] with MPFR endpoints and outward (directed) rounding.
///
/// Every operation returns an enclosure of the exact result set. Rounding
/// direction is passed per call; no global MPFR state is touched.
class Interval {
 public:
  static constexpr mpfr_prec_t kPrecision = 256;

  Interval();
  explicit Interval(const Rational& exact);
  explicit Interval(long exact);
  Interval(const Rational& lo, const Rational& hi);

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  mpfr_srcptr lo() const noexcept { return lo_; }
  mpfr_srcptr hi() const noexcept { return hi_; }

  double lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_double() const;

  /// Upper bound on (hi - lo) / 2.
  Interval radius() const;
  /// Point interval at the rounded midpoint.
  Interval midpoint() const;

  bool contains(const Rational& x) const;
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_nonnegative() const { return mpfr_sgn(lo_) >= 0; }

  /// Scientific notation with `digits` significant digits; lower rounded down, upper rounded up.
  std::string lower_string(int digits) const;
  std::string upper_string(int digits) const;
  std::string mid_string(int digits) const;

  Interval operator-() const;
  Interval& operator+=(const Interval& b);

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws DomainError when b contains 0.
  friend Interval operator/(const Interval& a, const Interval& b);

  friend Interval abs(const Interval& a);
  friend Interval max(const Interval& a, const Interval& b);
  friend Interval sqrt(const Interval& a);
  friend Interval log(const Interval& a);
  friend Interval exp(const Interval& a);
  /// Requires a within [-1.5, 1.5], where sin is increasing.
  friend Interval sin(const Interval& a);
  /// Requires a within [0, 3], where cos is decreasing.
  friend Interval cos(const Interval& a);
  friend Interval pow(const Interval& a, unsigned k);

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

/// Formats an MPFR value with the given rounding mode and significant digits.
std::string format_mpfr(mpfr_srcptr x, int digits, mpfr_rnd_t rnd);

}  // namespace l1disc
