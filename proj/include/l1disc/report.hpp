#pragma once

#include "l1disc/auxiliary.hpp"
#include "l1disc/combinatorics.hpp"
#include "l1disc/discrepancy.hpp"
#include "l1disc/testfn.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace l1disc {

using Json = nlohmann::ordered_json;

/// JSON number when it fits in 64 bits, decimal string otherwise.
Json integer_json(const Integer& value);

/// "mid±r" where [mid - r, mid + r] certainly contains the interval.
std::string plus_minus_string(const Interval& x, int digits);

struct NormsReport {
  std::size_t n_points = 0;
  std::optional<L1Norm> l1;
  std::optional<Rational> l2_sq;
  std::optional<Rational> linf;
  std::optional<Interval> d_n;
};

Json norms_json(const NormsReport& report, int digits);
Json tree_summary_json(const PointSet& points, const AuxFamilyTree& tree);
Json table_json(const OddCoefficientTable& table);
Json lemma_report_json(const LemmaReport& report);
Json certificate_json(const BoundCertificate& cert, int digits);
Json constants_json(int digits);
Json asymptotic_json(const AsymptoticTable& table, int digits);

}  // namespace l1disc
