#pragma once

#include "l1disc/dyadic.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace l1disc {

/// Finite multiset of points in [0,1]^2 with exact coordinates.
class PointSet {
 public:
  PointSet() = default;
  /// Throws DomainError if any coordinate lies outside [0,1].
  PointSet(std::vector<Point> points, std::string label);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<Point>& points() const noexcept { return points_; }
  const Point& operator[](std::size_t k) const { return points_[k]; }
  const std::string& label() const noexcept { return label_; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }

 private:
  std::vector<Point> points_;
  std::string label_;
};

inline constexpr unsigned kMaxVanDerCorputExponent = 24;

/// 2^m points (k/2^m, bitreverse_m(k)/2^m).
PointSet van_der_corput(unsigned m);

/// N i.i.d. uniform points quantized to multiples of 2^-53; deterministic per seed.
PointSet random_uniform(std::size_t n, std::uint64_t seed);

/// P together with its mirror image {(1-x, y)}.
PointSet symmetrize(const PointSet& points);

/// CSV: optional "x,y" header, '#' comments, one "x,y" pair per line.
PointSet read_csv(std::istream& in, std::string label = "csv");
PointSet read_csv(const std::filesystem::path& path);
void write_csv(const PointSet& points, std::ostream& out);
void write_csv(const PointSet& points, const std::filesystem::path& path);

}  // namespace l1disc
