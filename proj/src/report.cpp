#include "l1disc/report.hpp"


namespace l1disc {

Json integer_json(const Integer& value) {
  if (value.fits_slong_p()) return value.get_si();
  if (value >= 0 && mpz_sizeinbase(value.get_mpz_t(), 2) <= 64) {
    Integer hi = value >> 32;
    Integer lo = value - (hi << 32);
    return (static_cast<std::uint64_t>(hi.get_ui()) << 32) | lo.get_ui();
  }
  return value.get_str();
}

std::string plus_minus_string(const Interval& x, int digits) {
  const std::string mid = x.mid_string(digits);
  const Interval center(parse_rational(mid));
  const Interval spread = abs(x - center);
  return mid + "±" + format_mpfr(spread.hi(), 2, MPFR_RNDU);
}

Json norms_json(const NormsReport& report, int digits) {
  Json j;
  j["n_points"] = report.n_points;
  if (report.l1) {
    j["l1"] = report.l1->enclosure.mid_string(digits);
    j["l1_err"] = format_mpfr(report.l1->error().hi(), 3, MPFR_RNDU);
    j["l1_exact"] = report.l1->exact() ? Json(to_fraction_string(report.l1->rational_part)) : Json(nullptr);
  }
  if (report.l2_sq) j["l2_sq"] = to_fraction_string(*report.l2_sq);
  if (report.linf) j["linf"] = to_fraction_string(*report.linf);
  if (report.d_n) j["d_n"] = report.d_n->mid_string(digits);
  return j;
}

Json tree_summary_json(const PointSet& points, const AuxFamilyTree& tree) {
  Json j;
  j["i"] = tree.index();
  j["n"] = tree.n();
  Json levels = Json::array();
  for (const LevelRecord& rec : tree.levels())
    levels.push_back({{"l", rec.level}, {"nonempty", rec.nonempty.size()}, {"empty", integer_json(rec.empty_count)}});
  j["levels"] = std::move(levels);
  j["stabilized"] = tree.stabilized();
  j["l_star"] = tree.l_star() ? Json(*tree.l_star()) : Json(nullptr);
  j["sum_area_sq"] = to_fraction_string(sum_area_squared(tree));
  const InnerProduct ip = inner_product_D_fi(points, tree, true);
  j["inner_product"] = to_fraction_string(ip.value);
  if (!ip.exact) {
    j["inner_product_error"] = to_fraction_string(ip.error);
    j["uncovered_mass"] = to_fraction_string(uncovered_mass(points.size(), tree.n(), tree.depth()));
  }
  return j;
}

Json table_json(const OddCoefficientTable& table) {
  Json j;
  j["n"] = table.n;
  j["k"] = table.k;
  Json a = Json::object();
  for (const auto& [p, value] : table.coefficients)
    a[std::to_string(p)] = value.get_den() == 1 ? value.get_num().get_str() : to_fraction_string(value);
  j["A"] = std::move(a);
  j["all_integer"] = table.all_integer;
  j["reconstructed"] = table.reconstructed;
  return j;
}

Json lemma_report_json(const LemmaReport& report) {
  Json j;
  j["n_points"] = report.point_count;
  j["n"] = report.n;
  j["passed"] = report.passed();
  Json checks = Json::array();
  for (const LemmaCheck& c : report.checks)
    checks.push_back({{"lemma", c.lemma}, {"subject", c.subject}, {"passed", c.passed}, {"witness", c.witness}});
  j["checks"] = std::move(checks);
  return j;
}

Json certificate_json(const BoundCertificate& cert, int digits) {
  Json j;
  j["n"] = cert.n;
  j["N"] = cert.point_count;
  j["main_term"] = to_fraction_string(cert.inner_product_sum);
  j["main_term_exact"] = cert.exact;
  if (!cert.exact) j["main_term_error"] = to_fraction_string(cert.inner_product_error);
  j["lin_coefficient"] = plus_minus_string(cert.lin_coefficient, digits);
  j["main_term_abs_lower"] = cert.main_term_abs.lower_string(digits);
  j["error_bound"] = plus_minus_string(cert.error_bound, digits);
  j["error_bound_upper"] = cert.error_bound.upper_string(digits);
  j["cubic_factor"] = to_fraction_string(cert.cubic_factor);
  j["l1_lower_bound"] = cert.l1_lower_bound.lower_string(digits);
  j["d_n_bound"] = cert.d_n_bound ? Json(cert.d_n_bound->lower_string(digits)) : Json(nullptr);
  Json per_i = Json::array();
  for (const InnerProduct& ip : cert.inner_products) per_i.push_back(to_fraction_string(ip.value));
  j["inner_products"] = std::move(per_i);
  j["constants"] = constants_json(digits);
  return j;
}

Json constants_json(int digits) {
  Json j = Json::object();
  for (const ConstantEntry& c : constants_table())
    j[c.name] = {{"formula", c.formula},
                 {"value", to_string(c.value, digits)},
                 {"displayed", c.displayed},
                 {"matches", c.matches_display()},
                 {"external", c.external}};
  return j;
}

Json asymptotic_json(const AsymptoticTable& table, int digits) {
  Json j;
  Json rows = Json::array();
  for (const AsymptoticRow& r : table.rows)
    rows.push_back({{"n", r.n}, {"value", to_string(r.value, digits)}, {"gap", to_string(r.value - table.limit, 3)}});
  j["rows"] = std::move(rows);
  j["limit"] = to_string(table.limit, digits);
  return j;
}

}  // namespace l1disc
