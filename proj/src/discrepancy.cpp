#include "l1disc/discrepancy.hpp"

#include "l1disc/errors.hpp"

#include <algorithm>

namespace l1disc {

namespace {

void require_points(const PointSet& points) {
  if (points.empty()) throw PreconditionError("discrepancy needs N >= 1");
}

// Length of [lo, hi] intersected with [p, infinity).
Rational covered_length(const Rational& lo, const Rational& hi, const Rational& p) {
  const Rational& start = p > lo ? p : lo;
  return start < hi ? Rational(hi - start) : Rational(0);
}

}  // namespace

Rational eval_D(const PointSet& points, const Rational& x, const Rational& y) {
  if (x < 0 || x > 1 || y < 0 || y > 1) throw DomainError("eval_D outside [0,1]^2");
  long count = 0;
  for (const Point& p : points)
    if (p.x <= x && p.y <= y) ++count;
  return Rational(count) - Rational(static_cast<unsigned long>(points.size())) * x * y;
}

Rational box_integral_D(const PointSet& points, const Rational& x0, const Rational& x1, const Rational& y0,
                        const Rational& y1) {
  Rational counted = 0;
  for (const Point& p : points) {
    const Rational lx = covered_length(x0, x1, p.x);
    if (lx == 0) continue;
    counted += lx * covered_length(y0, y1, p.y);
  }
  const Rational n(static_cast<unsigned long>(points.size()));
  return counted - n * (x1 * x1 - x0 * x0) * (y1 * y1 - y0 * y0) / 4;
}

Rational haar_inner_product(const PointSet& points, const DyadicRectangle& rect) {
  Rational kernel_sum = 0;
  for (const Point& p : points) {
    const Rational kx = haar_point_kernel(rect.x, p.x);
    if (kx == 0) continue;
    kernel_sum += kx * haar_point_kernel(rect.y, p.y);
  }
  const Rational area = rect.area();
  return kernel_sum - Rational(static_cast<unsigned long>(points.size())) * area * area / 16;
}

Rational l2_norm_sq(const PointSet& points, Exec exec) {
  require_points(points);
  return kernels::warnock_pairs(points, exec);
}

Rational l2_norm_sq_cells(const PointSet& points, Exec exec) {
  require_points(points);
  return kernels::l2_cells(decompose(points), points.size(), exec);
}

L1Norm l1_norm_exact(const PointSet& points, Exec exec) {
  require_points(points);
  const kernels::L1Parts parts = kernels::l1_cells(decompose(points), points.size(), exec);
  Interval total(parts.rational_part);
  for (const kernels::LogTerm& term : parts.log_terms) total += Interval(term.weight) * log(Interval(term.ratio));
  return L1Norm{parts.rational_part, std::move(total), parts.log_terms.size()};
}

Rational linf_norm(const PointSet& points, Exec exec) {
  require_points(points);
  return kernels::linf_corners(decompose(points), points.size(), exec);
}

MonteCarloEstimate monte_carlo_norm(const PointSet& points, NormKind which, std::size_t samples,
                                    std::uint64_t seed, Exec exec) {
  require_points(points);
  if (samples < kMinMonteCarloSamples)
    throw PreconditionError("monte_carlo_norm needs at least " + std::to_string(kMinMonteCarloSamples) +
                            " samples");
  const kernels::SampleMoments m =
      kernels::mc_discrepancy_moments(points, which == NormKind::l1 ? 1 : 2, samples, seed, exec);
  return MonteCarloEstimate{m.mean, m.std_error, samples, seed};
}

Interval d_n(const PointSet& points, const L1Norm& l1) {
  if (points.size() < 2) throw DomainError("d_N needs N >= 2 (ln N > 0)");
  const Interval ln_n = log(Interval(Rational(static_cast<unsigned long>(points.size()))));
  return l1.enclosure / sqrt(ln_n);
}

Interval d_n(const PointSet& points) {
  if (points.size() < 2) throw DomainError("d_N needs N >= 2 (ln N > 0)");
  return d_n(points, l1_norm_exact(points));
}

}  // namespace l1disc
