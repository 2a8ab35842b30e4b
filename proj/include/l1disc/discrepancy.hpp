#pragma once

#include "l1disc/cells.hpp"
#include "l1disc/interval.hpp"
#include "l1disc/kernels.hpp"
#include "l1disc/pointset.hpp"

#include <cstdint>

namespace l1disc {

/// D_P(x, y) = #(P in [0,x] x [0,y]) - N x y.
Rational eval_D(const PointSet& points, const Rational& x, const Rational& y);

/// Exact integral of D_P over the box [x0,x1] x [y0,y1], by direct antiderivatives.
Rational box_integral_D(const PointSet& points, const Rational& x0, const Rational& x1, const Rational& y0,
                        const Rational& y1);

/// Exact integral of D_P h_R over [0,1]^2 via the one-dimensional Haar point kernel.
Rational haar_inner_product(const PointSet& points, const DyadicRectangle& rect);

/// Squared L2 norm by the pairwise closed form.
Rational l2_norm_sq(const PointSet& points, Exec exec = Exec::parallel);

/// Squared L2 norm by integrating (c - Nxy)^2 over every cell.
Rational l2_norm_sq_cells(const PointSet& points, Exec exec = Exec::parallel);

/// L1 norm = rational_part + sum of weight * ln(ratio) terms, enclosed by `enclosure`.
struct L1Norm {
  Rational rational_part;
  Interval enclosure;
  std::size_t log_terms = 0;

  bool exact() const { return log_terms == 0; }
  double value() const { return enclosure.mid_double(); }
  /// Certified half-width of the enclosure.
  Interval error() const { return enclosure.radius(); }
};

L1Norm l1_norm_exact(const PointSet& points, Exec exec = Exec::parallel);

/// sup |D_P| over [0,1]^2, including one-sided limits at discontinuities.
Rational linf_norm(const PointSet& points, Exec exec = Exec::parallel);

enum class NormKind { l1, l2 };

/// For L2 the estimate is of the squared norm.
struct MonteCarloEstimate {
  double estimate = 0;
  double std_error = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kMinMonteCarloSamples = 1000;

MonteCarloEstimate monte_carlo_norm(const PointSet& points, NormKind which, std::size_t samples,
                                    std::uint64_t seed, Exec exec = Exec::parallel);

/// ||D_P||_1 / sqrt(ln N) for this one set (an upper bound on the infimum d_N). Needs N >= 2.
Interval d_n(const PointSet& points, const L1Norm& l1);
Interval d_n(const PointSet& points);

}  // namespace l1disc
