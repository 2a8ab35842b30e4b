#include "l1disc/testfn.hpp"

#include "l1disc/combinatorics.hpp"
#include "l1disc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <random>

namespace l1disc {

namespace bmp = boost::multiprecision;

namespace {

Complex to_complex(const ComplexRational& z) { return Complex{to_real(z.re), to_real(z.im)}; }

ComplexRational mul(const ComplexRational& a, const ComplexRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// -i * z
Complex times_minus_i(const Complex& z) { return Complex{z.im, -z.re}; }

Real e_value() { return bmp::exp(Real(1)); }
Real ln2_value() { return bmp::log(Real(2)); }

}  // namespace

FourierAtomFunction FourierAtomFunction::sine(const Rational& amplitude, const Rational& omega) {
  return FourierAtomFunction({FourierAtom{{0, amplitude / 2}, omega}, FourierAtom{{0, -amplitude / 2}, -omega}});
}

Complex FourierAtomFunction::eval(const Real& x) const {
  Complex sum;
  for (const FourierAtom& a : atoms_) {
    const Real phase = to_real(a.omega) * x;
    sum += to_complex(a.c) * Complex{bmp::cos(phase), -bmp::sin(phase)};
  }
  return sum;
}

bool FourierAtomFunction::is_odd(const std::vector<Real>& samples) const {
  const Real tol("1e-80");
  return std::all_of(samples.begin(), samples.end(), [&](const Real& x) { return abs(eval(x) + eval(-x)) <= tol; });
}

ComplexRational FourierAtomFunction::derivative_at_zero(unsigned k) const {
  ComplexRational sum{0, 0};
  for (const FourierAtom& a : atoms_) {
    ComplexRational factor{1, 0};
    const ComplexRational step{0, -a.omega};
    for (unsigned j = 0; j < k; ++j) factor = mul(factor, step);
    const ComplexRational term = mul(a.c, factor);
    sum.re += term.re;
    sum.im += term.im;
  }
  return sum;
}

FourierAtomFunction operator+(const FourierAtomFunction& a, const FourierAtomFunction& b) {
  std::vector<FourierAtom> atoms = a.atoms_;
  atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
  return FourierAtomFunction(std::move(atoms));
}

FourierAtomFunction operator*(const Rational& s, const FourierAtomFunction& f) {
  std::vector<FourierAtom> atoms = f.atoms_;
  for (FourierAtom& a : atoms) a.c = {s * a.c.re, s * a.c.im};
  return FourierAtomFunction(std::move(atoms));
}

Complex lin_n(const FourierAtomFunction& t, unsigned n) {
  if (n < 1) throw PreconditionError("lin_n needs n >= 1");
  const Real root = bmp::sqrt(Real(n));
  Complex sum;
  for (const FourierAtom& a : t.atoms()) {
    const Real arg = to_real(a.omega) / root;
    const Real atom = bmp::sin(arg) * bmp::pow(bmp::cos(arg), n);
    sum += atom * times_minus_i(to_complex(a.c));
  }
  return sum;
}

Complex lin_series_crosscheck(const FourierAtomFunction& t, unsigned n, unsigned order) {
  if (n < 1) throw PreconditionError("lin_series_crosscheck needs n >= 1");
  if (order % 2 == 0 || order > kMaxSeriesOrder)
    throw PreconditionError("series order must be odd and <= " + std::to_string(kMaxSeriesOrder));
  // n^(k/2) = n^((k-1)/2) sqrt(n): accumulate the rational part exactly.
  ComplexRational exact{0, 0};
  Integer factorial = 1;
  Integer n_power = 1;
  for (unsigned k = 1; k <= order; ++k) {
    factorial *= k;
    if (k % 2 == 0) {
      n_power *= n;
      continue;
    }
    const Rational weight = a1(n, k) / Rational(factorial * n_power);
    const ComplexRational d = t.derivative_at_zero(k);
    exact.re += d.re * weight;
    exact.im += d.im * weight;
  }
  const Real root = bmp::sqrt(Real(n));
  return Complex{to_real(exact.re) / root, to_real(exact.im) / root};
}

Complex lin_limit(const FourierAtomFunction& t) {
  Complex sum;
  for (const FourierAtom& a : t.atoms()) {
    const Real w = to_real(a.omega);
    sum += (w * bmp::exp(-w * w / 2)) * times_minus_i(to_complex(a.c));
  }
  return sum;
}

ExtremalResult extremal_search(const ExtremalOptions& options) {
  if (options.tolerance < 1e-12) throw PreconditionError("extremal_search tolerance must be >= 1e-12");
  if (options.grid < 2) throw PreconditionError("extremal_search needs at least 2 grid intervals");
  const Real lo = options.lo.value_or(options.minimize ? Real(-10) : Real(0));
  const Real hi = options.hi.value_or(options.minimize ? Real(0) : Real(10));
  if (!(lo < hi)) throw PreconditionError("extremal_search needs lo < hi");
  const int sign = options.minimize ? -1 : 1;
  auto g = [&](const Real& w) { return sign * w * bmp::exp(-w * w / 2); };

  const Real step = (hi - lo) / options.grid;
  unsigned best = 0;
  Real best_value = g(lo);
  for (unsigned k = 1; k <= options.grid; ++k) {
    const Real v = g(lo + step * k);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  Real a = best == 0 ? lo : lo + step * (best - 1);
  Real b = best == options.grid ? hi : lo + step * (best + 1);
  const Real ratio = (bmp::sqrt(Real(5)) - 1) / 2;
  Real c = b - ratio * (b - a);
  Real d = a + ratio * (b - a);
  Real gc = g(c), gd = g(d);
  const Real tol(options.tolerance);
  while (b - a > tol) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - ratio * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + ratio * (b - a);
      gd = g(d);
    }
  }
  ExtremalResult r;
  r.omega = (a + b) / 2;
  // an endpoint optimum is reported exactly
  if (g(lo) >= g(r.omega) && best == 0) r.omega = lo;
  if (g(hi) >= g(r.omega) && best == options.grid) r.omega = hi;
  r.value = sign * g(r.omega);
  return r;
}

SupNorm sup_norm_via_coefficients(const FourierAtomFunction& t) {
  std::map<Rational, ComplexRational> merged;
  for (const FourierAtom& a : t.atoms()) {
    ComplexRational& c = merged.try_emplace(a.omega, ComplexRational{0, 0}).first->second;
    c.re += a.c.re;
    c.im += a.c.im;
  }
  SupNorm out;
  Rational exact_sum = 0;
  bool all_rational = true;
  std::size_t nonzero = 0;
  bool has_zero_frequency = false;
  for (const auto& [omega, c] : merged) {
    if (c.re == 0 && c.im == 0) continue;
    ++nonzero;
    if (omega == 0) has_zero_frequency = true;
    const Rational sq = c.re * c.re + c.im * c.im;
    out.value += bmp::sqrt(to_real(sq));
    if (mpz_perfect_square_p(sq.get_num_mpz_t()) && mpz_perfect_square_p(sq.get_den_mpz_t())) {
      Integer num, den;
      mpz_sqrt(num.get_mpz_t(), sq.get_num_mpz_t());
      mpz_sqrt(den.get_mpz_t(), sq.get_den_mpz_t());
      exact_sum += Rational(num, den);
    } else {
      all_rational = false;
    }
  }
  if (all_rational) out.exact = exact_sum;
  // Rational frequencies are Z-independent only when there is a single nonzero one.
  out.independence_verified = nonzero == 1 && !has_zero_frequency;
  return out;
}

Rational tuple_gap_sum(unsigned p, unsigned n) {
  if (p < 2) throw PreconditionError("tuple_gap_sum needs p >= 2");
  Rational sum = 0;
  for (unsigned g = p - 1; g <= n; ++g) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), g - 1, p - 2);
    sum += ldexp(Rational(c * (n + 1 - g)), -static_cast<long>(g));
  }
  return sum;
}

Interval certificate_error_bound(unsigned n, std::size_t point_count, const Rational& cubic_factor) {
  if (n < 1) throw PreconditionError("certificate_error_bound needs n >= 1");
  const Interval theta = Interval(1L) / sqrt(Interval(static_cast<long>(n)));
  const Interval s = sin(theta);
  const Interval c = cos(theta);
  const Rational scale = ldexp(Rational(static_cast<unsigned long>(point_count)), -static_cast<long>(n)) / 16;
  Interval total(0L);
  for (unsigned p = 3; p <= n + 1; p += 2) {
    const Rational factor = p == 3 ? cubic_factor : Rational(1);
    total += Interval(factor * scale * tuple_gap_sum(p, n)) * pow(c, n + 1 - p) * pow(s, p);
  }
  return total;
}

BoundCertificate certificate(const PointSet& points, const CertificateOptions& options) {
  if (points.empty()) throw PreconditionError("certificate needs N >= 1");
  BoundCertificate cert;
  cert.point_count = points.size();
  cert.n = n_from_pointcount(points.size());
  cert.cubic_factor = options.cubic_factor;
  const unsigned n = cert.n;

  cert.inner_products.resize(n + 1);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (options.exec == Exec::parallel)
  for (unsigned i = 0; i <= n; ++i) {
    try {
      const AuxFamilyTree tree = build_tree(points, i, TreeOptions{options.max_level});
      cert.inner_products[i] = inner_product_D_fi(points, tree, true);
    } catch (...) {
#pragma omp critical(l1disc_certificate)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  cert.inner_product_sum = 0;
  cert.inner_product_error = 0;
  for (const InnerProduct& ip : cert.inner_products) {
    cert.inner_product_sum += ip.value;
    cert.inner_product_error += ip.error;
    cert.exact = cert.exact && ip.exact;
  }
  const Interval theta = Interval(1L) / sqrt(Interval(static_cast<long>(n)));
  cert.lin_coefficient = pow(cos(theta), n) * sin(theta);
  // Every integral is <= its reported upper end <= 0, so |sum| only grows.
  cert.main_term_abs = cert.lin_coefficient * Interval(abs(cert.inner_product_sum));
  cert.error_bound = certificate_error_bound(n, points.size(), options.cubic_factor);
  cert.l1_lower_bound = max(Interval(0L), cert.main_term_abs - cert.error_bound);
  if (points.size() >= 2)
    cert.d_n_bound = cert.l1_lower_bound / sqrt(log(Interval(static_cast<long>(points.size()))));
  return cert;
}

int roth_f0(const AuxFamilyTree& tree, const Rational& x, const Rational& y) {
  if (x < 0 || x >= 1 || y < 0 || y >= 1) return 0;
  const Integer xi = floor_scaled(x, tree.x_scale(0));
  const Integer yi = floor_scaled(y, tree.y_scale(0));
  if (tree.find_root(xi, yi)) return 0;
  return haar_value(DyadicRectangle{DyadicInterval(tree.x_scale(0), xi), DyadicInterval(tree.y_scale(0), yi)}, x, y);
}

HalaszStats halasz_G_values(const PointSet& points, double gamma, std::size_t samples, std::uint64_t seed) {
  if (points.size() < 2) throw DomainError("halasz_G_values needs N >= 2 (ln N > 0)");
  if (!(gamma > 0)) throw PreconditionError("gamma must be positive");
  HalaszStats stats;
  stats.gamma = gamma;
  stats.n = n_from_pointcount(points.size());
  stats.samples = samples;
  stats.seed = seed;
  stats.c_h = 1 / (Real(1152) * (bmp::sqrt(e_value()) + 1) * bmp::sqrt(ln2_value()));
  std::vector<AuxFamilyTree> trees;
  for (unsigned i = 0; i <= stats.n; ++i) trees.push_back(build_tree(points, i, TreeOptions{0}));
  const double scale = gamma / std::sqrt(std::log(static_cast<double>(points.size())));
  std::mt19937_64 rng(seed);
  double sum = 0, sum_abs = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Rational x = ldexp(Rational(Integer(static_cast<unsigned long>(rng() >> 11))), -53);
    const Rational y = ldexp(Rational(Integer(static_cast<unsigned long>(rng() >> 11))), -53);
    double product = 1;
    for (unsigned i = 0; i <= stats.n; ++i) product *= 1 + i * scale * roth_f0(trees[i], x, y);
    const double g = product - 1;
    sum += g;
    sum_abs += std::abs(g);
    stats.sup_abs = std::max(stats.sup_abs, std::abs(g));
  }
  if (samples > 0) {
    stats.mean = sum / static_cast<double>(samples);
    stats.mean_abs = sum_abs / static_cast<double>(samples);
  }
  return stats;
}

bool ConstantEntry::matches_display() const {
  const auto dot = displayed.find('.');
  const long decimals = dot == std::string::npos ? 0 : static_cast<long>(displayed.size() - dot - 1);
  return bmp::abs(value - Real(displayed)) <= Real(5) * bmp::pow(Real(10), -(decimals + 1));
}

std::vector<ConstantEntry> constants_table() {
  const Real e = e_value();
  const Real root_e_ln2 = bmp::sqrt(e * ln2_value());
  std::vector<ConstantEntry> table;
  table.push_back({"liminf_l1", "3/(256 sqrt(e ln 2))", 3 / (256 * root_e_ln2), "0.00854", false});
  table.push_back({"limsup_l1", "1/(64 sqrt(e ln 2))", 1 / (64 * root_e_ln2), "0.01138", false});
  table.push_back({"halasz_c_h", "1/(1152 (sqrt(e)+1) sqrt(ln 2))",
                   1 / (Real(1152) * (bmp::sqrt(e) + 1) * bmp::sqrt(ln2_value())), "0.00039", false});
  table.push_back({"extremal_value", "1/sqrt(e)", 1 / bmp::sqrt(e), "0.6065307", false});
  table.push_back({"l2_upper_proved", "liminf L2 upper bound (quoted)", Real("0.17905"), "0.17905", true});
  table.push_back({"l2_upper_numerical", "liminf L2 upper bound, numerical (quoted)", Real("0.17601"), "0.17601", true});
  return table;
}

AsymptoticTable asymptotic_dn_table(unsigned first, unsigned last) {
  if (first < 2 || last > 64 || first > last) throw PreconditionError("asymptotic_dn_table range must lie in 2..64");
  AsymptoticTable table;
  const Real e = e_value();
  const Real ln2 = ln2_value();
  for (unsigned n = first; n <= last; ++n) {
    const Real v = bmp::sqrt(Real(n)) / (64 * bmp::sqrt(e) * bmp::sqrt(Real(n - 1) * ln2));
    table.rows.push_back({n, v});
  }
  table.limit = 1 / (64 * bmp::sqrt(e * ln2));
  return table;
}

}  // namespace l1disc
