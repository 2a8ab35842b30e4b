#pragma once

#include "l1disc/pointset.hpp"

#include <doctest.h>

#include <random>
#include <sstream>
#include <vector>

namespace test {

inline l1disc::Rational q(const char* text) { return l1disc::parse_rational(text); }

inline l1disc::PointSet pts(std::initializer_list<std::pair<const char*, const char*>> coords) {
  std::vector<l1disc::Point> v;
  for (const auto& [x, y] : coords) v.push_back(l1disc::make_point(q(x), q(y)));
  return l1disc::PointSet(std::move(v), "inline");
}

inline l1disc::PointSet singleton() { return pts({{"0", "0"}}); }

// Corpus shared by the discrepancy and auxiliary tests.
inline std::vector<l1disc::PointSet> corpus() {
  std::vector<l1disc::PointSet> sets;
  sets.push_back(singleton());
  sets.push_back(pts({{"1", "1"}}));
  for (unsigned m = 1; m <= 4; ++m) sets.push_back(l1disc::van_der_corput(m));
  for (std::uint64_t seed : {1, 2, 3}) sets.push_back(l1disc::random_uniform(6, seed));
  sets.push_back(pts({{"1/2", "1/4"}, {"1/2", "1/4"}, {"0.3", "0.7"}, {"1", "0.2"}}));
  sets.push_back(l1disc::symmetrize(l1disc::van_der_corput(2)));
  return sets;
}

}  // namespace test
