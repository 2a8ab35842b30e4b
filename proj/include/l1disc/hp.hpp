#pragma once

#include "l1disc/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace l1disc {

/// 100-digit MPFR real for non-certified high-precision evaluation.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<100>,
                                           boost::multiprecision::et_off>;

inline Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

struct Complex {
  Real re{0};
  Real im{0};

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
  Complex& operator+=(const Complex& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
};

inline Real abs(const Complex& z) { return boost::multiprecision::sqrt(z.re * z.re + z.im * z.im); }

/// Fixed-format decimal with `digits` significant digits.
inline std::string to_string(const Real& x, int digits) {
  return x.str(digits, std::ios_base::scientific);
}

}  // namespace l1disc
