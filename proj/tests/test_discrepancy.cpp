#include "l1disc/discrepancy.hpp"
#include "l1disc/errors.hpp"

#include "support.hpp"

#include <cmath>

using namespace l1disc;
using test::q;

TEST_CASE("eval_D examples") {
  CHECK(eval_D(test::singleton(), q("1/2"), q("1/2")) == q("3/4"));
  CHECK(eval_D(van_der_corput(2), q("1/2"), q("1/2")) == 2);
  CHECK(eval_D(test::pts({{"0", "0"}, {"0", "0"}, {"1/2", "0"}}), 0, 0) == 2);
  // closed boxes: a point on the boundary counts
  CHECK(eval_D(test::pts({{"1/2", "1/2"}}), q("1/2"), q("1/2")) == q("3/4"));
  CHECK_THROWS_AS(eval_D(test::singleton(), q("1.1"), 0), DomainError);
}

// Signed sum of box integrals over the four quadrants of R.
Rational haar_oracle(const PointSet& p, const DyadicRectangle& r) {
  Rational total = 0;
  const Rational x0 = r.x.left().to_rational(), xm = r.x.midpoint().to_rational(), x1 = r.x.right().to_rational();
  const Rational y0 = r.y.left().to_rational(), ym = r.y.midpoint().to_rational(), y1 = r.y.right().to_rational();
  total += box_integral_D(p, x0, xm, y0, ym);
  total -= box_integral_D(p, xm, x1, y0, ym);
  total -= box_integral_D(p, x0, xm, ym, y1);
  total += box_integral_D(p, xm, x1, ym, y1);
  return total;
}

TEST_CASE("haar_inner_product") {
  const DyadicRectangle quarter{DyadicInterval(1, 0), DyadicInterval(1, 0)};
  CHECK(haar_inner_product(test::pts({{"9/10", "9/10"}}), quarter) == q("-1/256"));
  CHECK(haar_inner_product(test::pts({{"1", "1"}}), quarter) == q("-1/256"));
  const DyadicRectangle unit{DyadicInterval::unit(), DyadicInterval::unit()};
  CHECK(haar_inner_product(test::singleton(), unit) == q("-1/16"));

  for (const PointSet& p : test::corpus()) {
    for (const DyadicRectangle& r :
         {unit, quarter, DyadicRectangle{DyadicInterval(2, 1), DyadicInterval(1, 1)},
          DyadicRectangle{DyadicInterval(3, 5), DyadicInterval(2, 0)}}) {
      CHECK(haar_inner_product(p, r) == haar_oracle(p, r));
      bool empty = true;
      for (const Point& pt : p) empty = empty && !r.contains(pt);
      const Rational a = r.area();
      if (empty) CHECK(haar_inner_product(p, r) == -Rational(static_cast<unsigned long>(p.size())) * a * a / 16);
    }
  }
}

TEST_CASE("box_integral_D against a brute-force grid") {
  // D restricted to a subcell of the cut grid is c - Nxy; integrate that directly.
  const PointSet p = test::pts({{"1/4", "1/2"}, {"3/4", "1/8"}, {"1/2", "1/2"}});
  const std::vector<Rational> cuts = {0, q("1/8"), q("1/4"), q("1/2"), q("3/4"), 1};
  Rational expect = 0;
  for (std::size_t a = 0; a + 1 < cuts.size(); ++a)
    for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
      const Rational mx = (cuts[a] + cuts[a + 1]) / 2, my = (cuts[b] + cuts[b + 1]) / 2;
      const Rational dx = cuts[a + 1] - cuts[a], dy = cuts[b + 1] - cuts[b];
      // c - N x y integrates to (c - N mx my) dx dy on a rectangle
      expect += eval_D(p, mx, my) * dx * dy;
    }
  CHECK(box_integral_D(p, 0, 1, 0, 1) == expect);
}

TEST_CASE("L2 norm: closed form vs cells") {
  CHECK(l2_norm_sq(test::singleton()) == q("11/18"));
  CHECK(l2_norm_sq(test::pts({{"1", "1"}})) == q("1/9"));
  CHECK(l2_norm_sq_cells(test::singleton()) == q("11/18"));
  for (const PointSet& p : test::corpus()) {
    CHECK(l2_norm_sq(p) == l2_norm_sq_cells(p));
    CHECK(l2_norm_sq(p) >= 0);
  }
  for (std::size_t n : {17u, 32u, 64u}) {
    const PointSet p = random_uniform(n, n);
    CHECK(l2_norm_sq(p) == l2_norm_sq_cells(p));
  }
  CHECK_THROWS(l2_norm_sq(PointSet()));
}

// Inner integral over y of |c - N x y| is elementary; integrate it over x by composite Simpson.
double cell_l1_numeric(double c, double n, double x0, double x1, double y0, double y1) {
  auto inner = [&](double x) {
    auto anti = [&](double y) { return c * y - n * x * y * y / 2; };
    const double t = x > 0 ? c / (n * x) : 1e300;
    if (t <= y0) return -(anti(y1) - anti(y0));
    if (t >= y1) return anti(y1) - anti(y0);
    return (anti(t) - anti(y0)) - (anti(y1) - anti(t));
  };
  const int steps = 20000;
  const double h = (x1 - x0) / steps;
  double sum = inner(x0) + inner(x1);
  for (int k = 1; k < steps; ++k) sum += inner(x0 + k * h) * (k % 2 ? 4 : 2);
  return sum * h / 3;
}

TEST_CASE("cell |c - Nxy| integral against numerical quadrature") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 60; ++trial) {
    const unsigned long n = 1 + rng() % 20;
    const unsigned long c = rng() % (n + 1);
    auto grid = [&]() -> Rational { return Rational(static_cast<unsigned long>(rng() % 65)) / 64; };
    Rational a = grid(), b = grid(), e = grid(), f = grid();
    if (a == b || e == f) continue;
    if (a > b) std::swap(a, b);
    if (e > f) std::swap(e, f);
    const kernels::L1Parts parts = kernels::cell_abs_integral(c, n, a, b, e, f);
    Interval value(parts.rational_part);
    for (const auto& t : parts.log_terms) value += Interval(t.weight) * log(Interval(t.ratio));
    const double numeric = cell_l1_numeric(static_cast<double>(c), static_cast<double>(n), to_double(a),
                                           to_double(b), to_double(e), to_double(f));
    CAPTURE(trial);
    CHECK(std::abs(value.mid_double() - numeric) < 1e-7);
  }
}

TEST_CASE("L1 norm exact values and Monte-Carlo agreement") {
  const L1Norm s = l1_norm_exact(test::singleton());
  CHECK(s.exact());
  CHECK(s.rational_part == q("3/4"));
  CHECK(l1_norm_exact(test::pts({{"1", "1"}})).rational_part == q("1/4"));

  for (const PointSet& p : test::corpus()) {
    const L1Norm l1 = l1_norm_exact(p);
    // certified error far below 1e-12 relative
    CHECK(l1.error().upper_double() <= 1e-12 * l1.value());
    const Rational unit_ip = haar_inner_product(p, {DyadicInterval::unit(), DyadicInterval::unit()});
    CHECK(l1.enclosure.lower_double() >= std::abs(to_double(unit_ip)));
    CHECK(l1.value() * l1.value() <= to_double(l2_norm_sq(p)) + 1e-12);
  }
  const PointSet v2 = van_der_corput(2);
  const MonteCarloEstimate mc = monte_carlo_norm(v2, NormKind::l1, 1'000'000, 3);
  CHECK(std::abs(mc.estimate - l1_norm_exact(v2).value()) <= 3 * mc.std_error);
}

TEST_CASE("Monte-Carlo estimator") {
  const MonteCarloEstimate a = monte_carlo_norm(test::singleton(), NormKind::l1, 1'000'000, 9);
  CHECK(std::abs(a.estimate - 0.75) <= 4 * a.std_error);
  const MonteCarloEstimate b = monte_carlo_norm(test::singleton(), NormKind::l2, 1'000'000, 9);
  CHECK(std::abs(b.estimate - 11.0 / 18) <= 4 * b.std_error);
  const MonteCarloEstimate c = monte_carlo_norm(test::singleton(), NormKind::l1, 1'000'000, 9);
  CHECK(a.estimate == c.estimate);
  CHECK(a.std_error == c.std_error);
  CHECK_THROWS_AS(monte_carlo_norm(test::singleton(), NormKind::l1, 999, 1), PreconditionError);
  for (const PointSet& p : test::corpus()) {
    const MonteCarloEstimate l1 = monte_carlo_norm(p, NormKind::l1, 200'000, 5);
    const MonteCarloEstimate l2 = monte_carlo_norm(p, NormKind::l2, 200'000, 5);
    CHECK(std::abs(l1.estimate - l1_norm_exact(p).value()) <= 4 * l1.std_error);
    CHECK(std::abs(l2.estimate - to_double(l2_norm_sq(p))) <= 4 * l2.std_error);
  }
}

TEST_CASE("L-infinity norm") {
  CHECK(linf_norm(test::singleton()) == 1);
  CHECK(linf_norm(test::pts({{"1", "1"}})) == 1);
  CHECK(linf_norm(van_der_corput(2)) >= 2);
  // oracle: evaluate D at every cut and just below every cut
  const Rational eps = ldexp(Rational(1), -100);
  for (const PointSet& p : test::corpus()) {
    std::vector<Rational> xs = {0, 1}, ys = {0, 1};
    for (const Point& pt : p) {
      xs.push_back(pt.x);
      ys.push_back(pt.y);
    }
    std::vector<Rational> cx, cy;
    for (const Rational& x : xs) {
      cx.push_back(x);
      if (x > 0) cx.push_back(x - eps);
    }
    for (const Rational& y : ys) {
      cy.push_back(y);
      if (y > 0) cy.push_back(y - eps);
    }
    Rational best = 0;
    for (const Rational& x : cx)
      for (const Rational& y : cy) best = std::max(best, Rational(abs(eval_D(p, x, y))));
    const Rational exact = linf_norm(p);
    // probing at cut - eps moves D by at most 2 N eps from the one-sided limit
    CHECK(abs(exact - best) <= Rational(static_cast<unsigned long>(2 * p.size())) * eps);
  }
}

TEST_CASE("d_N") {
  const PointSet two = test::pts({{"0.25", "0.5"}, {"0.75", "0.25"}});
  const L1Norm l1 = l1_norm_exact(two);
  const Interval dn = d_n(two, l1);
  CHECK(std::abs(dn.mid_double() - l1.value() / std::sqrt(std::log(2.0))) < 1e-12);
  CHECK_THROWS_AS(d_n(test::singleton()), DomainError);
  const Interval v4 = d_n(van_der_corput(4));
  CHECK(v4.lower_double() > 0);
}
