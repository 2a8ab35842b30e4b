#pragma once

#include "l1disc/auxiliary.hpp"
#include "l1disc/hp.hpp"
#include "l1disc/interval.hpp"
#include "l1disc/pointset.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace l1disc {

struct ComplexRational {
  Rational re;
  Rational im;
  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

/// c e^{-i omega x}
struct FourierAtom {
  ComplexRational c;
  Rational omega;
};

/// T(x) = sum_j c_j e^{-i omega_j x}.
class FourierAtomFunction {
 public:
  FourierAtomFunction() = default;
  explicit FourierAtomFunction(std::vector<FourierAtom> atoms) : atoms_(std::move(atoms)) {}

  /// amplitude * sin(omega x) = (i a/2) e^{-i omega x} + (-i a/2) e^{i omega x}.
  static FourierAtomFunction sine(const Rational& amplitude = 1, const Rational& omega = 1);

  const std::vector<FourierAtom>& atoms() const noexcept { return atoms_; }

  Complex eval(const Real& x) const;
  /// T(-x) + T(x) = 0 (to 1e-80) at every sample point.
  bool is_odd(const std::vector<Real>& samples) const;
  /// k-th derivative at 0: sum_j c_j (-i omega_j)^k, exact.
  ComplexRational derivative_at_zero(unsigned k) const;

  friend FourierAtomFunction operator+(const FourierAtomFunction& a, const FourierAtomFunction& b);
  friend FourierAtomFunction operator*(const Rational& s, const FourierAtomFunction& f);

 private:
  std::vector<FourierAtom> atoms_;
};

/// Linear-part coefficient: sum_j c_j (-i) sin(w_j/sqrt n) cos^n(w_j/sqrt n).
Complex lin_n(const FourierAtomFunction& t, unsigned n);

inline constexpr unsigned kMaxSeriesOrder = 41;

/// sum over odd k <= K of T^(k)(0) A_1^n(k) / (k! n^(k/2)).
Complex lin_series_crosscheck(const FourierAtomFunction& t, unsigned n, unsigned order);

/// -i sum_j omega_j e^{-omega_j^2/2} c_j.
Complex lin_limit(const FourierAtomFunction& t);

struct ExtremalOptions {
  bool minimize = false;
  /// Defaults: [0, 10] when maximizing, [-10, 0] when minimizing.
  std::optional<Real> lo;
  std::optional<Real> hi;
  double tolerance = 1e-12;
  unsigned grid = 1000;
};

struct ExtremalResult {
  Real omega;
  Real value;
};

/// Extremum of omega e^{-omega^2/2}: grid scan, then golden section on the best bracket.
ExtremalResult extremal_search(const ExtremalOptions& options = {});

struct SupNorm {
  Real value;                        // sum |c_j| after merging equal frequencies
  std::optional<Rational> exact;     // when every |c_j| is rational
  bool independence_verified = false;  // frequencies linearly independent over Z
};

/// Always an upper bound for sup |T|; equal to it under the independence hypothesis.
SupNorm sup_norm_via_coefficients(const FourierAtomFunction& t);

/// S_p(n) = sum_{g=p-1}^{n} 2^-g C(g-1, p-2) (n+1-g) = sum over p-tuples j_1<...<j_p in [0,n] of 2^(j_1-j_p).
Rational tuple_gap_sum(unsigned p, unsigned n);

/// sum over odd p = 3..n+1 of factor_p cos^(n+1-p)(t) sin^p(t) (N 2^-n / 16) S_p(n), t = 1/sqrt n.
/// factor_3 = cubic_factor, the rest 1.
Interval certificate_error_bound(unsigned n, std::size_t point_count, const Rational& cubic_factor = 1);

struct CertificateOptions {
  Rational cubic_factor = 1;
  std::optional<unsigned> max_level;
  Exec exec = Exec::parallel;
};

struct BoundCertificate {
  unsigned n = 0;
  std::size_t point_count = 0;
  Rational cubic_factor;
  std::vector<InnerProduct> inner_products;  // per i
  Rational inner_product_sum;    // exact when all trees stabilized, else its upper end
  Rational inner_product_error;  // true sum lies in [sum - error, sum]
  bool exact = true;
  Interval lin_coefficient;      // cos^n(t) sin(t)
  Interval main_term_abs;        // lin_coefficient * |sum| (a lower bound when not exact)
  Interval error_bound;
  Interval l1_lower_bound;       // max(0, main_term_abs - error_bound)
  std::optional<Interval> d_n_bound;
};

BoundCertificate certificate(const PointSet& points, const CertificateOptions& options = {});

struct HalaszStats {
  double gamma = 0;
  unsigned n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double sup_abs = 0;
  double mean = 0;
  double mean_abs = 0;
  Real c_h;
};

/// f_i^0(x, y): h_R on level-0 empty rectangles R of shape 2^-i x 2^(i-n), else 0.
int roth_f0(const AuxFamilyTree& level0_tree, const Rational& x, const Rational& y);

/// G = prod_{i=0}^n (1 + i gamma / sqrt(ln N) f_i^0) - 1 at uniform sample points. N >= 2.
HalaszStats halasz_G_values(const PointSet& points, double gamma, std::size_t samples, std::uint64_t seed);

struct ConstantEntry {
  std::string name;
  std::string formula;
  Real value;
  std::string displayed;  // the rounded value quoted in the literature
  bool external = false;  // quoted only, not computed here
  bool matches_display() const;
};

std::vector<ConstantEntry> constants_table();

struct AsymptoticRow {
  unsigned n = 0;
  Real value;  // sqrt(n) / (64 sqrt(e) sqrt(ln 2^(n-1)))
};

struct AsymptoticTable {
  std::vector<AsymptoticRow> rows;
  Real limit;  // 1 / (64 sqrt(e ln 2))
};

/// Needs 2 <= first <= last <= 64.
AsymptoticTable asymptotic_dn_table(unsigned first = 2, unsigned last = 64);

}  // namespace l1disc
