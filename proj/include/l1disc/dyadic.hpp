#pragma once

#include "l1disc/rational.hpp"

#include <compare>
#include <optional>
#include <vector>

namespace l1disc {

/// numerator / 2^exponent, kept in lowest terms (odd numerator or exponent 0).
class DyadicFraction {
 public:
  DyadicFraction() = default;
  DyadicFraction(Integer numerator, unsigned exponent);

  /// Throws DomainError when the denominator is not a power of two.
  static DyadicFraction from_rational(const Rational& x);

  const Integer& numerator() const noexcept { return numerator_; }
  unsigned exponent() const noexcept { return exponent_; }
  Rational to_rational() const;

  DyadicFraction half() const;

  friend DyadicFraction operator+(const DyadicFraction& a, const DyadicFraction& b);
  friend DyadicFraction operator-(const DyadicFraction& a, const DyadicFraction& b);
  friend DyadicFraction operator*(const DyadicFraction& a, const DyadicFraction& b);
  friend bool operator==(const DyadicFraction& a, const DyadicFraction& b);
  friend std::strong_ordering operator<=>(const DyadicFraction& a, const DyadicFraction& b);

 private:
  void normalize();

  Integer numerator_{0};
  unsigned exponent_ = 0;
};

/// Half-open [index * 2^-scale, (index+1) * 2^-scale) inside [0,1).
class DyadicInterval {
 public:
  DyadicInterval(unsigned scale, Integer index);
  static DyadicInterval unit() { return DyadicInterval(0, 0); }

  unsigned scale() const noexcept { return scale_; }
  const Integer& index() const noexcept { return index_; }

  DyadicFraction left() const { return DyadicFraction(index_, scale_); }
  DyadicFraction right() const { return DyadicFraction(index_ + 1, scale_); }
  DyadicFraction midpoint() const { return DyadicFraction(2 * index_ + 1, scale_ + 1); }
  Rational length() const;

  bool contains(const Rational& x) const;
  bool contains(const DyadicInterval& other) const;
  /// Dyadic intervals either nest or are disjoint.
  bool intersects(const DyadicInterval& other) const;

  DyadicInterval left_half() const { return DyadicInterval(scale_ + 1, 2 * index_); }
  DyadicInterval right_half() const { return DyadicInterval(scale_ + 1, 2 * index_ + 1); }
  /// j-th of the 2^bits equal children, left to right.
  DyadicInterval child(unsigned bits, const Integer& j) const;

  friend bool operator==(const DyadicInterval& a, const DyadicInterval& b) = default;

 private:
  unsigned scale_;
  Integer index_;
};

/// The 2^bits equal dyadic children of I in left-to-right order.
std::vector<DyadicInterval> subdivide(const DyadicInterval& interval, unsigned bits);

/// +1 on the left half, -1 on the right half, 0 outside (x = right end is outside).
int haar_value(const DyadicInterval& interval, const Rational& x);

/// Integral over x in [0,1] of 1{x >= p} h_I(x).
Rational haar_point_kernel(const DyadicInterval& interval, const Rational& p);

struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Validates 0 <= x, y <= 1; throws DomainError otherwise.
Point make_point(Rational x, Rational y);

struct DyadicRectangle {
  DyadicInterval x;
  DyadicInterval y;

  Rational area() const;
  bool contains(const Point& p) const { return x.contains(p.x) && y.contains(p.y); }
  bool intersects(const DyadicRectangle& other) const {
    return x.intersects(other.x) && y.intersects(other.y);
  }
  friend bool operator==(const DyadicRectangle&, const DyadicRectangle&) = default;
};

/// Intersection of two dyadic rectangles (again dyadic), or nothing.
std::optional<DyadicRectangle> intersect(const DyadicRectangle& a, const DyadicRectangle& b);

/// h_R(x, y) = h_{R_x}(x) h_{R_y}(y).
int haar_value(const DyadicRectangle& rect, const Rational& x, const Rational& y);

}  // namespace l1disc
