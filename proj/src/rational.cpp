#include "l1disc/rational.hpp"

#include "l1disc/errors.hpp"

#include <cctype>
#include <stdexcept>

namespace l1disc {

Integer pow2(unsigned k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

Rational ldexp(const Rational& x, long k) {
  Rational r;
  if (k >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), x.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpq_div_2exp(r.get_mpq_t(), x.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
  }
  return r;
}

Integer floor_scaled(const Rational& x, unsigned k) {
  Integer num = x.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), k);
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  return q;
}

bool is_dyadic(const Rational& x) {
  const mpz_srcptr den = x.get_den_mpz_t();
  return mpz_popcount(den) == 1;
}

unsigned dyadic_exponent(const Rational& x) {
  if (!is_dyadic(x)) throw DomainError("value is not a dyadic fraction: " + x.get_str());
  return static_cast<unsigned>(mpz_scan1(x.get_den_mpz_t(), 0));
}

std::string to_fraction_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  Integer v(std::string(s), 10);
  return neg ? Integer(-v) : v;
}

Rational parse_decimal(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    const Integer ev = parse_integer(s.substr(e + 1));
    if (!ev.fits_slong_p() || abs(ev) > 100000) throw std::invalid_argument("exponent out of range");
    exponent = ev.get_si();
    s = s.substr(0, e);
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("empty number");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    throw std::invalid_argument("malformed decimal: '" + std::string(s) + "'");
  std::string digits = std::string(int_part) + std::string(frac_part);
  Integer num(digits.empty() ? std::string("0") : digits, 10);
  long scale = exponent - static_cast<long>(frac_part.size());
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r = scale < 0 ? Rational(num, p10) : Rational(num * p10);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(trim(s.substr(0, slash)));
    std::string_view den_text = trim(s.substr(slash + 1));
    Integer den;
    if (den_text.starts_with("2^")) {
      const Integer k = parse_integer(den_text.substr(2));
      if (k < 0 || k > 1000000) throw std::invalid_argument("dyadic exponent out of range");
      den = pow2(static_cast<unsigned>(k.get_ui()));
    } else {
      den = parse_integer(den_text);
    }
    if (den <= 0) throw std::invalid_argument("denominator must be positive");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  return parse_decimal(s);
}

std::string to_literal(const Rational& x) {
  const Integer& den = x.get_den();
  if (den == 1) return x.get_num().get_str();
  if (is_dyadic(x)) return x.get_num().get_str() + "/2^" + std::to_string(dyadic_exponent(x));
  Integer rest = den;
  unsigned twos = static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), Integer(2).get_mpz_t()));
  unsigned fives = static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), Integer(5).get_mpz_t()));
  if (rest != 1) return to_fraction_string(x);
  const unsigned digits = std::max(twos, fives);
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, digits);
  Integer scaled = x.get_num() * (p10 / den);
  const bool neg = scaled < 0;
  std::string body = Integer(abs(scaled)).get_str();
  if (body.size() <= digits) body.insert(0, digits - body.size() + 1, '0');
  body.insert(body.size() - digits, 1, '.');
  return neg ? "-" + body : body;
}

double to_double(const Rational& x) { return mpq_get_d(x.get_mpq_t()); }

}  // namespace l1disc
