#pragma once

// Data-parallel inner loops. Each kernel takes an Exec policy; Exec::serial is
// the reference implementation and Exec::parallel the OpenMP one. Exact kernels
// return identical values under both; floating-point kernels use a fixed chunk
// decomposition so results are bit-identical as well.

#include "l1disc/cells.hpp"
#include "l1disc/dyadic.hpp"
#include "l1disc/pointset.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace l1disc {

enum class Exec { serial, parallel };

namespace kernels {

/// weight * ln(ratio), ratio > 1.
struct LogTerm {
  Rational weight;
  Rational ratio;
};

/// Integral of |c - Nxy| over every cell, split into an exact rational part and log terms.
struct L1Parts {
  Rational rational_part;
  std::vector<LogTerm> log_terms;  // in cell order
};

/// Closed-form integral of |c - N x y| over [x0,x1] x [y0,y1], c >= 0, N >= 1.
L1Parts cell_abs_integral(unsigned long c, unsigned long n_points, const Rational& x0, const Rational& x1,
                          const Rational& y0, const Rational& y1);

L1Parts l1_cells(const CellDecomposition& cells, std::size_t n_points, Exec exec);

/// Sum over cells of the exact integral of (c - N x y)^2.
Rational l2_cells(const CellDecomposition& cells, std::size_t n_points, Exec exec);

/// Warnock-type closed form of the squared L2 norm (O(N^2) pair sum).
Rational warnock_pairs(const PointSet& points, Exec exec);

/// max |D| over closed and strict counts at every cut corner.
Rational linf_corners(const CellDecomposition& cells, std::size_t n_points, Exec exec);

struct SampleMoments {
  double mean = 0;
  double std_error = 0;
};

/// Monte-Carlo mean of |D|^power over uniform samples (power 1 or 2).
SampleMoments mc_discrepancy_moments(const PointSet& points, unsigned power, std::size_t samples,
                                     std::uint64_t seed, Exec exec);

inline constexpr std::size_t kMonteCarloChunks = 64;

/// Sum over all 2^n sign vectors eps of (1 + eps_1 + ... + eps_n)^k.
Integer sign_vector_power_sum(unsigned n, unsigned k, Exec exec);

/// An intersection rectangle together with the rectangles whose Haar functions multiply on it.
struct ProductPiece {
  DyadicRectangle rect;
  std::vector<DyadicRectangle> factors;
};

struct PieceIntegrals {
  Rational product_integral;   // sum over pieces of the integral of prod h
  Rational d_product_integral; // sum over pieces of the integral of D prod h
  Rational abs_term_sum;       // sum over pieces of |integral of D prod h|
  Rational covered_area;
  bool sides_distinct = true;  // x side lengths pairwise distinct, same for y, on every piece
  bool product_is_haar = true; // prod h equals +-h_rect on every piece
};

/// Exact piecewise integration: every factor is constant on each quadrant of a piece.
PieceIntegrals integrate_pieces(std::span<const ProductPiece> pieces, const PointSet& points, Exec exec);

}  // namespace kernels
}  // namespace l1disc
