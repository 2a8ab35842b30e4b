#include "l1disc/combinatorics.hpp"

#include "l1disc/errors.hpp"

#include <algorithm>
#include <string>

namespace l1disc {

namespace {

void require_odd(unsigned k) {
  if (k % 2 == 0) throw DomainError("k must be odd, got " + std::to_string(k));
}

Integer binomial(unsigned n, unsigned j) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, j);
  return r;
}

Integer ipow(const Integer& base, unsigned k) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), k);
  return r;
}

// Product of two series given by t^k/k! coefficients.
std::vector<Integer> egf_product(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> out(a.size(), 0);
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t j = 0; j <= k; ++j) {
      if (a[j] == 0 || b[k - j] == 0) continue;
      out[k] += binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)) * a[j] * b[k - j];
    }
  return out;
}

}  // namespace

Rational a1(unsigned n, unsigned k) {
  require_odd(k);
  Integer total = 0;
  for (unsigned j = 0; j <= n; ++j)
    total += binomial(n, j) * ipow(Integer(1 + static_cast<long>(n) - 2 * static_cast<long>(j)), k);
  Rational r(total, pow2(n));
  r.canonicalize();
  return r;
}

Rational a1_bruteforce(unsigned n, unsigned k, Exec exec) {
  require_odd(k);
  if (n > kMaxBruteForceN)
    throw ResourceLimitError("brute force over 2^" + std::to_string(n) + " sign vectors exceeds n <= " +
                             std::to_string(kMaxBruteForceN));
  Rational r(kernels::sign_vector_power_sum(n, k, exec), pow2(n));
  r.canonicalize();
  return r;
}

FormalOddSeries generating_coefficients(unsigned n, unsigned degree) {
  if (degree > kMaxSeriesDegree)
    throw PreconditionError("series degree " + std::to_string(degree) + " exceeds " +
                            std::to_string(kMaxSeriesDegree));
  std::vector<Integer> sinh_c(degree + 1, 0), cosh_c(degree + 1, 0);
  for (unsigned k = 0; k <= degree; ++k) (k % 2 ? sinh_c : cosh_c)[k] = 1;
  std::vector<Integer> acc = sinh_c;
  // square-and-multiply keeps the number of products at O(log n)
  std::vector<Integer> base = cosh_c;
  for (unsigned e = n; e > 0; e >>= 1) {
    if (e & 1) acc = egf_product(acc, base);
    if (e > 1) base = egf_product(base, base);
  }
  FormalOddSeries series;
  series.degree = degree;
  series.coefficients = std::move(acc);
  for (unsigned k = 0; k <= degree; k += 2)
    if (series.coefficients[k] != 0) throw InternalError("even coefficient in an odd series");
  return series;
}

SignVector::SignVector(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int v : entries_)
    if (v != 1 && v != -1) throw DomainError("sign vector entries must be +1 or -1");
}

SignVector SignVector::from_mask(unsigned length, std::uint64_t mask) {
  std::vector<int> e(length);
  for (unsigned j = 0; j < length; ++j) e[j] = (mask >> j) & 1 ? -1 : 1;
  return SignVector(std::move(e));
}

long SignVector::sum() const {
  long s = 0;
  for (int v : entries_) s += v;
  return s;
}

std::vector<Integer> elementary_symmetric(const SignVector& v) {
  std::vector<Integer> e(v.size() + 1, 0);
  e[0] = 1;
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t d = j + 1; d > 0; --d) e[d] += v[j] * e[d - 1];
  return e;
}

std::vector<Integer> power_sums(const SignVector& v, unsigned kmax) {
  std::vector<Integer> p(kmax + 1, 0);
  for (int x : v.entries()) {
    Integer term = 1;
    for (unsigned k = 0; k <= kmax; ++k) {
      p[k] += term;
      term *= x;
    }
  }
  return p;
}

NewtonResult newton_check(const SignVector& v, unsigned k) {
  if (k < 1 || k > v.size())
    throw PreconditionError("newton_check needs 1 <= k <= " + std::to_string(v.size()));
  const auto e = elementary_symmetric(v);
  const auto p = power_sums(v, k);
  Integer rhs = 0;
  for (unsigned i = 1; i <= k; ++i) rhs += (i % 2 ? 1 : -1) * e[k - i] * p[i];
  NewtonResult r;
  r.identity = Integer(k) * e[k] == rhs;
  r.specialization = true;
  for (unsigned i = 1; i <= k; ++i) {
    const Integer expected = i % 2 ? p[1] : Integer(static_cast<unsigned long>(v.size()));
    if (p[i] != expected) r.specialization = false;
  }
  return r;
}

Rational OddCoefficientTable::coefficient(unsigned p) const {
  auto it = coefficients.find(p);
  return it == coefficients.end() ? Rational(0) : it->second;
}

OddCoefficientTable full_table(unsigned n, unsigned k, Exec exec) {
  require_odd(k);
  if (n > kMaxTableN || k > kMaxTableK)
    throw ResourceLimitError("full_table supports n <= " + std::to_string(kMaxTableN) + " and k <= " +
                             std::to_string(kMaxTableK));
  const unsigned length = n + 1;
  std::vector<unsigned> unknowns;
  for (unsigned p = 1; p <= std::min(k, length); p += 2) unknowns.push_back(p);
  const std::size_t m = unknowns.size();
  const std::uint64_t vectors = std::uint64_t{1} << length;

  auto row_for = [&](std::uint64_t mask) {
    const SignVector z = SignVector::from_mask(length, mask);
    const auto e = elementary_symmetric(z);
    std::vector<Rational> row(m + 1);
    for (std::size_t c = 0; c < m; ++c) row[c] = e[unknowns[c]];
    row[m] = ipow(Integer(z.sum()), k);
    return row;
  };

  // Incremental echelon form over the rows until full rank.
  std::vector<std::vector<Rational>> pivots;
  std::vector<std::size_t> pivot_col;
  for (std::uint64_t mask = 0; mask < vectors && pivots.size() < m; ++mask) {
    auto row = row_for(mask);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const Rational f = row[pivot_col[r]];
      if (f == 0) continue;
      for (std::size_t c = 0; c <= m; ++c) row[c] -= f * pivots[r][c];
    }
    auto lead = std::find_if(row.begin(), row.begin() + static_cast<long>(m), [](const Rational& x) { return x != 0; });
    if (lead == row.begin() + static_cast<long>(m)) continue;
    const std::size_t col = static_cast<std::size_t>(lead - row.begin());
    const Rational scale = row[col];
    for (auto& x : row) x /= scale;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const Rational f = pivots[r][col];
      if (f == 0) continue;
      for (std::size_t c = 0; c <= m; ++c) pivots[r][c] -= f * row[c];
    }
    pivots.push_back(std::move(row));
    pivot_col.push_back(col);
  }
  if (pivots.size() < m) throw InternalError("sign-vector system is singular");

  OddCoefficientTable table;
  table.n = n;
  table.k = k;
  table.all_integer = true;
  for (std::size_t r = 0; r < m; ++r) {
    const Rational& value = pivots[r][m];
    table.coefficients[unknowns[pivot_col[r]]] = value;
    if (value.get_den() != 1) table.all_integer = false;
  }

  std::vector<Rational> coeff(m);
  for (std::size_t c = 0; c < m; ++c) coeff[c] = table.coefficients[unknowns[c]];
  long mismatches = 0;
#pragma omp parallel for reduction(+ : mismatches) schedule(static) if (exec == Exec::parallel)
  for (std::int64_t mask = 0; mask < static_cast<std::int64_t>(vectors); ++mask) {
    const SignVector z = SignVector::from_mask(length, static_cast<std::uint64_t>(mask));
    const auto e = elementary_symmetric(z);
    Rational rhs = 0;
    for (std::size_t c = 0; c < m; ++c) rhs += coeff[c] * e[unknowns[c]];
    if (rhs != ipow(Integer(z.sum()), k)) ++mismatches;
  }
  table.reconstructed = mismatches == 0;
  return table;
}

}  // namespace l1disc
