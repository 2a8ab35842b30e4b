#include "l1disc/auxiliary.hpp"
#include "l1disc/combinatorics.hpp"
#include "l1disc/discrepancy.hpp"
#include "l1disc/kernels.hpp"

#include "support.hpp"

using namespace l1disc;

namespace {

bool same(const kernels::L1Parts& a, const kernels::L1Parts& b) {
  if (a.rational_part != b.rational_part || a.log_terms.size() != b.log_terms.size()) return false;
  for (std::size_t k = 0; k < a.log_terms.size(); ++k)
    if (a.log_terms[k].weight != b.log_terms[k].weight || a.log_terms[k].ratio != b.log_terms[k].ratio) return false;
  return true;
}

}  // namespace

TEST_CASE("serial and parallel kernels agree") {
  std::vector<PointSet> sets = test::corpus();
  sets.push_back(random_uniform(64, 3));
  sets.push_back(van_der_corput(6));
  for (const PointSet& p : sets) {
    CAPTURE(p.label());
    const CellDecomposition cells = decompose(p);
    CHECK(same(kernels::l1_cells(cells, p.size(), Exec::serial), kernels::l1_cells(cells, p.size(), Exec::parallel)));
    CHECK(kernels::l2_cells(cells, p.size(), Exec::serial) == kernels::l2_cells(cells, p.size(), Exec::parallel));
    CHECK(kernels::warnock_pairs(p, Exec::serial) == kernels::warnock_pairs(p, Exec::parallel));
    CHECK(kernels::linf_corners(cells, p.size(), Exec::serial) ==
          kernels::linf_corners(cells, p.size(), Exec::parallel));
    for (unsigned power : {1u, 2u}) {
      const auto s = kernels::mc_discrepancy_moments(p, power, 20000, 7, Exec::serial);
      const auto q = kernels::mc_discrepancy_moments(p, power, 20000, 7, Exec::parallel);
      CHECK(s.mean == q.mean);
      CHECK(s.std_error == q.std_error);
    }
  }
}

TEST_CASE("serial and parallel combinatorics agree") {
  for (unsigned n = 0; n <= 14; n += 2)
    for (unsigned k = 1; k <= 9; k += 4)
      CHECK(kernels::sign_vector_power_sum(n, k, Exec::serial) == kernels::sign_vector_power_sum(n, k, Exec::parallel));
  const OddCoefficientTable a = full_table(7, 7, Exec::serial);
  const OddCoefficientTable b = full_table(7, 7, Exec::parallel);
  CHECK(a.coefficients == b.coefficients);
  CHECK(a.reconstructed == b.reconstructed);
}

TEST_CASE("serial and parallel lemma checks agree") {
  for (const PointSet& p : {van_der_corput(2), random_uniform(5, 9)}) {
    const std::vector<unsigned> idx = {0, 1, 3};
    const ProductCheckReport s = product_integral_bound_check(p, idx, 1, kDefaultPieceCap, Exec::serial);
    const ProductCheckReport q = product_integral_bound_check(p, idx, 1, kDefaultPieceCap, Exec::parallel);
    CHECK(s.pieces == q.pieces);
    CHECK(s.product_integral == q.product_integral);
    CHECK(s.d_product_integral == q.d_product_integral);
    CHECK(s.abs_term_sum == q.abs_term_sum);

    LemmaOptions serial, parallel;
    serial.exec = Exec::serial;
    serial.product_level = parallel.product_level = 1;
    const LemmaReport rs = lemma_suite(p, serial);
    const LemmaReport rp = lemma_suite(p, parallel);
    REQUIRE(rs.checks.size() == rp.checks.size());
    for (std::size_t k = 0; k < rs.checks.size(); ++k) {
      CHECK(rs.checks[k].subject == rp.checks[k].subject);
      CHECK(rs.checks[k].passed == rp.checks[k].passed);
      CHECK(rs.checks[k].witness == rp.checks[k].witness);
    }
  }
}
