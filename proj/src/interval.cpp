#include "l1disc/interval.hpp"

#include "l1disc/errors.hpp"

#include <array>
#include <utility>

namespace l1disc {

Interval::Interval() {
  mpfr_init2(lo_, kPrecision);
  mpfr_init2(hi_, kPrecision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& exact) {
  mpfr_init2(lo_, kPrecision);
  mpfr_init2(hi_, kPrecision);
  mpfr_set_q(lo_, exact.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, exact.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(long exact) : Interval(Rational(exact)) {}

Interval::Interval(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw PreconditionError("interval with lo > hi");
  mpfr_init2(lo_, kPrecision);
  mpfr_init2(hi_, kPrecision);
  mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, kPrecision);
  mpfr_init2(hi_, kPrecision);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval() {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

double Interval::mid_double() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }

Interval Interval::radius() const {
  Interval r;
  mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(r.hi_, r.hi_, 1, MPFR_RNDU);
  mpfr_set(r.lo_, r.hi_, MPFR_RNDD);
  return r;
}

Interval Interval::midpoint() const {
  Interval r;
  mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
  mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
  return r;
}

bool Interval::contains(const Rational& x) const {
  return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

std::string format_mpfr(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  char* buf = nullptr;
  const int precision = digits > 1 ? digits - 1 : 0;
  if (mpfr_asprintf(&buf, "%.*R*e", precision, rnd, x) < 0) throw InternalError("mpfr_asprintf failed");
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string Interval::lower_string(int digits) const { return format_mpfr(lo_, digits, MPFR_RNDD); }
std::string Interval::upper_string(int digits) const { return format_mpfr(hi_, digits, MPFR_RNDU); }
std::string Interval::mid_string(int digits) const {
  Interval m = midpoint();
  return format_mpfr(m.lo_, digits, MPFR_RNDN);
}

Interval Interval::operator-() const {
  Interval r;
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval& Interval::operator+=(const Interval& b) {
  mpfr_add(lo_, lo_, b.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, b.hi_, MPFR_RNDU);
  return *this;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(a);
  r += b;
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

namespace {

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Min over the four endpoint combinations rounded down, max rounded up.
void endpoint_hull(mpfr_ptr lo, mpfr_ptr hi, mpfr_srcptr alo, mpfr_srcptr ahi, mpfr_srcptr blo,
                   mpfr_srcptr bhi, BinaryOp op) {
  const std::array<std::pair<mpfr_srcptr, mpfr_srcptr>, 4> combos{
      {{alo, blo}, {alo, bhi}, {ahi, blo}, {ahi, bhi}}};
  mpfr_t t;
  mpfr_init2(t, Interval::kPrecision);
  mpfr_set_inf(lo, 1);
  mpfr_set_inf(hi, -1);
  for (const auto& [x, y] : combos) {
    op(t, x, y, MPFR_RNDD);
    mpfr_min(lo, lo, t, MPFR_RNDD);
    op(t, x, y, MPFR_RNDU);
    mpfr_max(hi, hi, t, MPFR_RNDU);
  }
  mpfr_clear(t);
}

}  // namespace

Interval operator*(const Interval& a, const Interval& b) {
  Interval r;
  endpoint_hull(r.lo_, r.hi_, a.lo_, a.hi_, b.lo_, b.hi_, &mpfr_mul);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) throw DomainError("interval division by an interval containing 0");
  Interval r;
  endpoint_hull(r.lo_, r.hi_, a.lo_, a.hi_, b.lo_, b.hi_, &mpfr_div);
  return r;
}

Interval abs(const Interval& a) {
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  Interval r;
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.lo_) < 0) throw DomainError("sqrt of an interval reaching below 0");
  Interval r;
  mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (mpfr_sgn(a.lo_) <= 0) throw DomainError("log of an interval reaching 0");
  Interval r;
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& a) {
  Interval r;
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval sin(const Interval& a) {
  if (mpfr_cmp_d(a.lo_, -1.5) < 0 || mpfr_cmp_d(a.hi_, 1.5) > 0)
    throw DomainError("interval sin is only implemented on [-1.5, 1.5]");
  Interval r;
  mpfr_sin(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sin(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval cos(const Interval& a) {
  if (mpfr_sgn(a.lo_) < 0 || mpfr_cmp_d(a.hi_, 3.0) > 0)
    throw DomainError("interval cos is only implemented on [0, 3]");
  Interval r;
  mpfr_cos(r.lo_, a.hi_, MPFR_RNDD);
  mpfr_cos(r.hi_, a.lo_, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& a, unsigned k) {
  if (mpfr_sgn(a.lo_) >= 0) {
    Interval r;
    mpfr_pow_ui(r.lo_, a.lo_, k, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, a.hi_, k, MPFR_RNDU);
    return r;
  }
  Interval r(1L);
  for (unsigned j = 0; j < k; ++j) r = r * a;
  return r;
}

}  // namespace l1disc
