#include "l1disc/dyadic.hpp"

#include "l1disc/errors.hpp"

namespace l1disc {

DyadicFraction::DyadicFraction(Integer numerator, unsigned exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  normalize();
}

void DyadicFraction::normalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  const unsigned twos = static_cast<unsigned>(mpz_scan1(numerator_.get_mpz_t(), 0));
  const unsigned shift = std::min(twos, exponent_);
  if (shift > 0) {
    mpz_fdiv_q_2exp(numerator_.get_mpz_t(), numerator_.get_mpz_t(), shift);
    exponent_ -= shift;
  }
}

DyadicFraction DyadicFraction::from_rational(const Rational& x) {
  return DyadicFraction(x.get_num(), dyadic_exponent(x));
}

Rational DyadicFraction::to_rational() const { return ldexp(Rational(numerator_), -static_cast<long>(exponent_)); }

DyadicFraction DyadicFraction::half() const { return DyadicFraction(numerator_, exponent_ + 1); }

namespace {

Integer shifted(const Integer& v, unsigned bits) {
  Integer r;
  mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), bits);
  return r;
}

}  // namespace

DyadicFraction operator+(const DyadicFraction& a, const DyadicFraction& b) {
  const unsigned e = std::max(a.exponent_, b.exponent_);
  return DyadicFraction(shifted(a.numerator_, e - a.exponent_) + shifted(b.numerator_, e - b.exponent_), e);
}

DyadicFraction operator-(const DyadicFraction& a, const DyadicFraction& b) {
  const unsigned e = std::max(a.exponent_, b.exponent_);
  return DyadicFraction(shifted(a.numerator_, e - a.exponent_) - shifted(b.numerator_, e - b.exponent_), e);
}

DyadicFraction operator*(const DyadicFraction& a, const DyadicFraction& b) {
  return DyadicFraction(a.numerator_ * b.numerator_, a.exponent_ + b.exponent_);
}

bool operator==(const DyadicFraction& a, const DyadicFraction& b) {
  return a.exponent_ == b.exponent_ && a.numerator_ == b.numerator_;
}

std::strong_ordering operator<=>(const DyadicFraction& a, const DyadicFraction& b) {
  const unsigned e = std::max(a.exponent_, b.exponent_);
  const int c = cmp(shifted(a.numerator_, e - a.exponent_), shifted(b.numerator_, e - b.exponent_));
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

DyadicInterval::DyadicInterval(unsigned scale, Integer index) : scale_(scale), index_(std::move(index)) {
  if (index_ < 0 || index_ >= pow2(scale_))
    throw DomainError("dyadic interval index out of range at scale " + std::to_string(scale_));
}

Rational DyadicInterval::length() const { return ldexp(Rational(1), -static_cast<long>(scale_)); }

bool DyadicInterval::contains(const Rational& x) const { return floor_scaled(x, scale_) == index_; }

bool DyadicInterval::contains(const DyadicInterval& other) const {
  if (other.scale_ < scale_) return false;
  Integer up;
  mpz_fdiv_q_2exp(up.get_mpz_t(), other.index_.get_mpz_t(), other.scale_ - scale_);
  return up == index_;
}

bool DyadicInterval::intersects(const DyadicInterval& other) const {
  return contains(other) || other.contains(*this);
}

DyadicInterval DyadicInterval::child(unsigned bits, const Integer& j) const {
  if (j < 0 || j >= pow2(bits)) throw DomainError("child index out of range");
  return DyadicInterval(scale_ + bits, shifted(index_, bits) + j);
}

std::vector<DyadicInterval> subdivide(const DyadicInterval& interval, unsigned bits) {
  if (bits == 0) throw PreconditionError("subdivide needs bits >= 1");
  if (bits > 24) throw ResourceLimitError("subdivide: 2^bits children exceeds the cap");
  std::vector<DyadicInterval> out;
  const unsigned long count = 1UL << bits;
  out.reserve(count);
  const Integer base = shifted(interval.index(), bits);
  for (unsigned long j = 0; j < count; ++j) out.emplace_back(interval.scale() + bits, base + j);
  return out;
}

int haar_value(const DyadicInterval& interval, const Rational& x) {
  const Integer cell = floor_scaled(x, interval.scale() + 1);
  const Integer left = 2 * interval.index();
  if (cell == left) return 1;
  if (cell == left + 1) return -1;
  return 0;
}

Rational haar_point_kernel(const DyadicInterval& interval, const Rational& p) {
  const int side = haar_value(interval, p);
  if (side == 0) return 0;
  if (side == 1) return interval.left().to_rational() - p;
  return p - interval.right().to_rational();
}

Point make_point(Rational x, Rational y) {
  if (x < 0 || x > 1 || y < 0 || y > 1)
    throw DomainError("point (" + x.get_str() + ", " + y.get_str() + ") outside [0,1]^2");
  return Point{std::move(x), std::move(y)};
}

Rational DyadicRectangle::area() const {
  return ldexp(Rational(1), -static_cast<long>(x.scale() + y.scale()));
}

std::optional<DyadicRectangle> intersect(const DyadicRectangle& a, const DyadicRectangle& b) {
  if (!a.intersects(b)) return std::nullopt;
  return DyadicRectangle{a.x.scale() >= b.x.scale() ? a.x : b.x, a.y.scale() >= b.y.scale() ? a.y : b.y};
}

int haar_value(const DyadicRectangle& rect, const Rational& x, const Rational& y) {
  const int hx = haar_value(rect.x, x);
  return hx == 0 ? 0 : hx * haar_value(rect.y, y);
}

}  // namespace l1disc
