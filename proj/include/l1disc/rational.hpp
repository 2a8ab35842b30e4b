#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace l1disc {

using Integer = mpz_class;
using Rational = mpq_class;

Integer pow2(unsigned k);

/// Exact x * 2^k for any integer k.
Rational ldexp(const Rational& x, long k);

/// floor(x * 2^k).
Integer floor_scaled(const Rational& x, unsigned k);

/// True when the reduced denominator is a power of two.
bool is_dyadic(const Rational& x);

/// Exponent k of a dyadic value's denominator 2^k. Throws DomainError otherwise.
unsigned dyadic_exponent(const Rational& x);

/// Always "p/q", including "/1" for integers.
std::string to_fraction_string(const Rational& x);

/// Parses a decimal ("0.25", "-3", "1.5e-2"), a dyadic literal ("3/2^3"),
/// or a plain fraction ("7/10"). Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Shortest exact literal accepted by parse_rational: "a/2^k" for dyadic
/// non-integers, a finite decimal when the denominator is 2^a 5^b, "p/q" otherwise.
std::string to_literal(const Rational& x);

double to_double(const Rational& x);

}  // namespace l1disc
