// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.

#include "l1disc/auxiliary.hpp"
#include "l1disc/combinatorics.hpp"
#include "l1disc/discrepancy.hpp"
#include "l1disc/errors.hpp"
#include "l1disc/testfn.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace l1disc;
namespace bmp = boost::multiprecision;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.ok) o.detail = why;
  o.ok = false;
}

PointSet singleton() { return PointSet({make_point(0, 0)}, "singleton"); }

std::vector<PointSet> lemma_sets(bool with_n16) {
  std::vector<PointSet> s;
  for (unsigned m : {2u, 3u, 4u}) s.push_back(van_der_corput(m));
  for (std::size_t n : {4u, 8u, 16u}) {
    if (n == 16 && !with_n16) continue;
    for (std::uint64_t seed : {1u, 2u, 3u}) s.push_back(random_uniform(n, seed));
  }
  s.push_back(singleton());
  return s;
}

std::vector<PointSet> norm_sets() {
  std::vector<PointSet> s = lemma_sets(true);
  s.push_back(PointSet({make_point(1, 1)}, "corner"));
  for (unsigned m : {5u, 6u}) s.push_back(van_der_corput(m));
  for (std::size_t n : {32u, 64u}) s.push_back(random_uniform(n, 1));
  s.push_back(symmetrize(van_der_corput(3)));
  return s;
}

Outcome criterion1() {
  Outcome o;
  if (a1(1, 3) != 4) fail(o, "A_1^1(3) != 4");
  for (unsigned n = 0; n <= 12; ++n) {
    const FormalOddSeries g = generating_coefficients(n, 11);
    for (unsigned k = 1; k <= 11; k += 2) {
      const Rational closed = a1(n, k);
      if (closed != a1_bruteforce(n, k) || closed != Rational(g.at(k)))
        fail(o, "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  o.detail = o.ok ? "a1 = brute force = series coefficient for n<=12, odd k<=11; A_1^1(3)=4" : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  const OddCoefficientTable t13 = full_table(1, 3);
  if (t13.coefficient(1) != 4 || t13.coefficients.size() != 1) fail(o, "(f0+f1)^3 != 4f0+4f1");
  std::size_t vectors = 0;
  for (unsigned n = 0; n <= 8; ++n)
    for (unsigned k = 1; k <= 9; k += 2) {
      const OddCoefficientTable t = full_table(n, k);
      if (!t.reconstructed) fail(o, "table reconstruction flag n=" + std::to_string(n));
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n + 1)); ++mask) {
        const SignVector v = SignVector::from_mask(n + 1, mask);
        const auto e = elementary_symmetric(v);
        Rational rhs = 0;
        for (const auto& [p, c] : t.coefficients) rhs += c * Rational(e[p]);
        Integer lhs;
        mpz_pow_ui(lhs.get_mpz_t(), Integer(v.sum()).get_mpz_t(), k);
        if (Rational(lhs) != rhs) fail(o, "identity fails at n=" + std::to_string(n) + " k=" + std::to_string(k));
        ++vectors;
      }
    }
  if (o.ok) o.detail = "identity exact at " + std::to_string(vectors) + " (table, sign vector) pairs; (f0+f1)^3 = 4f0+4f1";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    const unsigned len = 1 + static_cast<unsigned>(rng() % 16);
    const SignVector v = SignVector::from_mask(len, rng());
    for (unsigned k = 1; k <= len; ++k)
      if (!newton_check(v, k).passed()) fail(o, "vector " + std::to_string(t) + " k=" + std::to_string(k));
  }
  if (o.ok) o.detail = "100 random sign vectors, lengths 1..16, every k";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const FourierAtomFunction s = FourierAtomFunction::sine();
  const Real e_half = bmp::exp(Real(-0.5));
  std::ostringstream os;
  for (unsigned n : {100u, 1000u, 10000u}) {
    const Real gap = bmp::abs(bmp::sqrt(Real(n)) * lin_n(s, n).re - e_half);
    os << "n=" << n << " gap=" << to_string(gap, 3) << " ";
    if (gap > Real(1) / n) fail(o, "n=" + std::to_string(n) + " gap " + to_string(gap, 3));
  }
  const Real limit = lin_limit(s).re;
  os << "lin_limit=" << to_string(limit, 12);
  // 10 significant digits
  if (bmp::abs(limit - Real("0.6065306597")) > Real("5e-11")) fail(o, "lin_limit = " + to_string(limit, 12));
  if (o.ok) o.detail = os.str();
  return o;
}

Outcome criterion5() {
  Outcome o;
  const ExtremalResult r = extremal_search();
  if (bmp::abs(r.omega - 1) > Real("1e-4")) fail(o, "omega* = " + to_string(r.omega, 12));
  if (bmp::abs(r.value - bmp::exp(Real(-0.5))) > Real("1e-6")) fail(o, "value = " + to_string(r.value, 12));
  if (o.ok) o.detail = "omega*=" + to_string(r.omega, 12) + " value=" + to_string(r.value, 12);
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::vector<FourierAtomFunction> fns = {FourierAtomFunction::sine()};
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    FourierAtomFunction f;
    for (int j = 0; j < 3; ++j) {
      const Rational a = Rational(static_cast<long>(rng() % 201) - 100) / 100;
      const Rational w = Rational(static_cast<long>(rng() % 401) - 200) / 100;
      f = f + FourierAtomFunction::sine(a, w);
    }
    fns.push_back(f);
  }
  double worst = 0;
  for (const FourierAtomFunction& f : fns)
    for (unsigned n = 1; n <= 64; ++n) {
      const double gap = static_cast<double>(abs(lin_series_crosscheck(f, n, kMaxSeriesOrder) - lin_n(f, n)));
      worst = std::max(worst, gap);
    }
  if (worst > 1e-10) fail(o, "worst gap " + std::to_string(worst));
  char buf[160];
  std::snprintf(buf, sizeof buf, "sin + 20 random odd 3-atom functions (|omega|<=2), n=1..64, worst gap %.2e", worst);
  if (o.ok) o.detail = buf;
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::size_t checked = 0;
  for (const PointSet& p : lemma_sets(true)) {
    const unsigned n = n_from_pointcount(p.size());
    const Rational bound = lemma_short_bound(p.size());
    for (unsigned i = 0; i <= n; ++i) {
      const AuxFamilyTree t = build_tree(p, i);
      if (!t.stabilized()) {
        fail(o, p.label() + " i=" + std::to_string(i) + " not stabilized");
        continue;
      }
      const Rational v = inner_product_D_fi(p, t).value;
      if (!(v <= bound)) fail(o, p.label() + " i=" + std::to_string(i) + ": " + v.get_str() + " > " + bound.get_str());
      ++checked;
    }
  }
  const Rational s = inner_product_D_fi(singleton(), build_tree(singleton(), 0)).value;
  if (s != Rational(-9, 544) || !(s <= Rational(-1, 64))) fail(o, "singleton gives " + s.get_str());
  if (o.ok) o.detail = std::to_string(checked) + " (set, i) pairs; singleton -9/544 <= -1/64";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t tuples = 0, at_level2 = 0;
  for (const PointSet& p : lemma_sets(false)) {
    const unsigned n = n_from_pointcount(p.size());
    if (n > 4) continue;
    std::vector<std::vector<unsigned>> idx;
    for (unsigned a = 0; a <= n; ++a)
      for (unsigned b = a + 1; b <= n; ++b) {
        idx.push_back({a, b});
        for (unsigned c = b + 1; c <= n; ++c) idx.push_back({a, b, c});
      }
    for (const auto& tuple : idx) {
      std::optional<ProductCheckReport> r;
      for (unsigned level = 2;; --level) {
        try {
          r = product_integral_bound_check(p, tuple, level);
          break;
        } catch (const ResourceLimitError&) {
          if (level == 0) break;
        }
      }
      if (!r) {
        fail(o, p.label() + ": piece cap exceeded even at L=0");
        continue;
      }
      ++tuples;
      if (r->level == 2) ++at_level2;
      if (!r->part_a) fail(o, p.label() + ": covered product integral exceeds the uncovered-mass bound");
      if (!r->part_b) fail(o, p.label() + ": |int D prod f| exceeds 2^(i1-ip) N 2^-n/16 + error");
      if (!r->sides_distinct) fail(o, p.label() + ": side lengths not distinct");
    }
  }
  if (o.ok)
    o.detail = std::to_string(tuples) + " pairs/triples over n<=4 sets (" + std::to_string(at_level2) + " at L=2)";
  return o;
}

Outcome criterion9() {
  Outcome o;
  if (l2_norm_sq(singleton()) != Rational(11, 18)) fail(o, "singleton L2^2 != 11/18");
  const L1Norm s1 = l1_norm_exact(singleton());
  if (!s1.exact() || s1.rational_part != Rational(3, 4)) fail(o, "singleton L1 != 3/4");
  double worst = 0;
  std::size_t sets = 0;
  for (const PointSet& p : norm_sets()) {
    if (p.size() > 64) continue;
    ++sets;
    const Rational l2 = l2_norm_sq(p);
    if (l2 != l2_norm_sq_cells(p)) fail(o, p.label() + ": Warnock != cells");
    const L1Norm l1 = l1_norm_exact(p);
    const MonteCarloEstimate m1 = monte_carlo_norm(p, NormKind::l1, 1'000'000, 1);
    const MonteCarloEstimate m2 = monte_carlo_norm(p, NormKind::l2, 1'000'000, 1);
    const double z1 = std::abs(m1.estimate - l1.value()) / m1.std_error;
    const double z2 = std::abs(m2.estimate - to_double(l2)) / m2.std_error;
    worst = std::max({worst, z1, z2});
    if (z1 > 4) fail(o, p.label() + ": L1 MC off by " + std::to_string(z1) + " s.e.");
    if (z2 > 4) fail(o, p.label() + ": L2 MC off by " + std::to_string(z2) + " s.e.");
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu sets; Warnock = cells exactly; worst MC deviation %.2f s.e.; 3/4 and 11/18", sets,
                worst);
  if (o.ok) o.detail = buf;
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::size_t sets = 0;
  double min_gap = 1e300;
  for (const PointSet& p : norm_sets()) {
    const BoundCertificate c = certificate(p);
    const L1Norm l1 = l1_norm_exact(p);
    if (!mpfr_lessequal_p(c.l1_lower_bound.hi(), l1.enclosure.lo()))
      fail(o, p.label() + ": lower bound " + c.l1_lower_bound.upper_string(10) + " > L1 " +
                  l1.enclosure.lower_string(10));
    min_gap = std::min(min_gap, l1.enclosure.lower_double() - c.l1_lower_bound.upper_double());
    ++sets;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu sets, min(L1 - lower bound) = %.4g", sets, min_gap);
  if (o.ok) o.detail = buf;
  return o;
}

Outcome criterion11() {
  Outcome o;
  const auto table = constants_table();
  for (const char* name : {"liminf_l1", "limsup_l1", "halasz_c_h"}) {
    bool found = false;
    for (const ConstantEntry& c : table)
      if (c.name == name) {
        found = true;
        if (!c.matches_display()) fail(o, c.name + " = " + to_string(c.value, 10) + " vs " + c.displayed);
      }
    if (!found) fail(o, std::string("missing ") + name);
  }
  const AsymptoticTable a = asymptotic_dn_table(2, 64);
  if (bmp::abs(a.limit - Real("0.01138")) > Real("5e-6")) fail(o, "limit " + to_string(a.limit, 10));
  Real prev_diff = -1;
  for (std::size_t k = 1; k < a.rows.size(); ++k) {
    const Real diff = bmp::abs(a.rows[k].value - a.rows[k - 1].value);
    if (prev_diff >= 0 && diff > prev_diff) fail(o, "successive differences grow at n=" + std::to_string(a.rows[k].n));
    prev_diff = diff;
  }
  const Real last_gap = bmp::abs(a.rows.back().value - a.limit);
  if (prev_diff > Real("2e-6") || last_gap > bmp::abs(a.rows.front().value - a.limit) / 10)
    fail(o, "table does not approach the limit");
  if (o.ok)
    o.detail = "0.00854, 0.01138, 0.00039 reproduced; limit " + to_string(a.limit, 10) + ", last step " +
               to_string(prev_diff, 3) + ", |d_64 - limit| " + to_string(last_gap, 3);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, 10, criterion1},  {2, 30, criterion2},  {3, 5, criterion3},    {4, 1, criterion4},
      {5, 1, criterion5},   {6, 10, criterion6},  {7, 60, criterion7},   {8, 120, criterion8},
      {9, 120, criterion9}, {10, 60, criterion10}, {11, 1, criterion11},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      fail(o, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limit_seconds) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "runtime %.2fs over the %.0fs limit", secs, c.limit_seconds);
      fail(o, buf);
    }
    std::printf("%s criterion %d: %s (%.2fs)\n", o.ok ? "PASS" : "FAIL", c.id, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
