#include "l1disc/combinatorics.hpp"
#include "l1disc/errors.hpp"

#include "support.hpp"

using namespace l1disc;

namespace {

Integer binom(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer ipow(long base, unsigned k) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), Integer(base).get_mpz_t(), k);
  return r;
}

// Plain enumeration, no shared kernels.
Rational a1_enumerate(unsigned n, unsigned k) {
  Integer total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long s = 1;
    for (unsigned j = 0; j < n; ++j) s += (mask >> j & 1) ? -1 : 1;
    total += ipow(s, k);
  }
  return Rational(total) / Rational(pow2(n));
}

// sinh(t) cosh(t)^n as a sum of exponentials.
Rational egf_coefficient(unsigned n, unsigned k) {
  Integer total = 0;
  for (unsigned j = 0; j <= n; ++j) {
    const long m = static_cast<long>(n) - 2 * static_cast<long>(j);
    total += binom(n, j) * (ipow(m + 1, k) - ipow(m - 1, k));
  }
  return Rational(total) / Rational(pow2(n + 1));
}

// e_p by summing over subsets.
Integer subset_esym(const std::vector<int>& v, unsigned p) {
  Integer total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << v.size()); ++mask) {
    if (static_cast<unsigned>(__builtin_popcountll(mask)) != p) continue;
    long prod = 1;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (mask >> j & 1) prod *= v[j];
    total += prod;
  }
  return total;
}

}  // namespace

TEST_CASE("a1 examples") {
  CHECK(a1(1, 3) == 4);
  CHECK(a1(2, 3) == 7);
  CHECK(a1(0, 5) == 1);
  for (unsigned n = 0; n < 30; ++n) CHECK(a1(n, 1) == 1);
  CHECK_THROWS_AS(a1(3, 2), DomainError);
  CHECK_THROWS_AS(a1(3, 0), DomainError);
  CHECK(a1_bruteforce(1, 3) == 4);
  CHECK(a1_bruteforce(2, 3) == 7);
  CHECK(a1_bruteforce(0, 7) == 1);
  CHECK_THROWS_AS(a1_bruteforce(kMaxBruteForceN + 1, 3), ResourceLimitError);
  CHECK_THROWS_AS(a1_bruteforce(3, 4), DomainError);
}

TEST_CASE("a1 against enumeration and the generating function") {
  for (unsigned n = 0; n <= 12; ++n) {
    const FormalOddSeries g = generating_coefficients(n, 41);
    for (unsigned k = 1; k <= 41; k += 2) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(Rational(g.at(k)) == a1(n, k));
      CHECK(egf_coefficient(n, k) == a1(n, k));
      if (k <= 11) {
        CHECK(a1_enumerate(n, k) == a1(n, k));
        CHECK(a1_bruteforce(n, k) == a1(n, k));
        CHECK(a1(n, k) > 0);
        CHECK(a1(n, k).get_den() == 1);
      }
    }
    for (unsigned k = 0; k <= 41; k += 2) CHECK(g.at(k) == 0);
  }
  CHECK(generating_coefficients(1, 3).at(3) == 4);
  CHECK(generating_coefficients(2, 3).at(3) == 7);
  CHECK(generating_coefficients(5, kMaxSeriesDegree).degree == kMaxSeriesDegree);
  CHECK_THROWS_AS(generating_coefficients(2, kMaxSeriesDegree + 1), PreconditionError);
}

TEST_CASE("elementary symmetric and power sums") {
  const auto e = elementary_symmetric(SignVector({1, 1, 1}));
  REQUIRE(e.size() == 4);
  CHECK(e[0] == 1);
  CHECK(e[1] == 3);
  CHECK(e[2] == 3);
  CHECK(e[3] == 1);
  const auto f = elementary_symmetric(SignVector({1, -1}));
  CHECK(f[1] == 0);
  CHECK(f[2] == -1);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const unsigned len = 1 + rng() % 10;
    const SignVector v = SignVector::from_mask(len, rng());
    const auto es = elementary_symmetric(v);
    long prod = 1;
    for (int x : v.entries()) prod *= x;
    CHECK(es[len] == prod);
    for (unsigned p = 0; p <= len; ++p) CHECK(es[p] == subset_esym(v.entries(), p));
    const auto ps = power_sums(v, 6);
    CHECK(ps[0] == static_cast<long>(len));
    CHECK(ps[1] == v.sum());
  }
  CHECK_THROWS(SignVector({1, 0}));
  CHECK(SignVector::from_mask(3, 0b101).entries() == std::vector<int>{-1, 1, -1});
}

TEST_CASE("Newton identities") {
  CHECK(newton_check(SignVector({1, 1, 1}), 2).passed());
  const NewtonResult r = newton_check(SignVector({1, -1}), 2);
  CHECK(r.identity);
  CHECK(r.specialization);
  std::mt19937_64 rng(11);
  const SignVector v16 = SignVector::from_mask(16, rng());
  for (unsigned k = 1; k <= 16; ++k) CHECK(newton_check(v16, k).passed());
  CHECK_THROWS_AS(newton_check(v16, 0), PreconditionError);
  CHECK_THROWS_AS(newton_check(v16, 17), PreconditionError);
}

TEST_CASE("odd coefficient tables") {
  const OddCoefficientTable t13 = full_table(1, 3);
  CHECK(t13.coefficients.size() == 1);
  CHECK(t13.coefficient(1) == 4);
  CHECK(t13.reconstructed);
  const OddCoefficientTable t21 = full_table(2, 1);
  CHECK(t21.coefficient(1) == 1);
  CHECK(t21.coefficient(3) == 0);
  CHECK(t21.coefficient(2) == 0);

  for (unsigned n = 0; n <= 6; ++n)
    for (unsigned k = 1; k <= 7; k += 2) {
      const OddCoefficientTable t = full_table(n, k);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(t.reconstructed);
      CHECK(t.all_integer);
      CHECK(t.coefficient(1) == a1(n, k));
      for (unsigned p = std::min(k, n + 1) + 1; p <= 12; ++p) CHECK(t.coefficient(p) == 0);
      // reconstruct with subset sums
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n + 1)); ++mask) {
        const SignVector v = SignVector::from_mask(n + 1, mask);
        Rational rhs = 0;
        for (const auto& [p, c] : t.coefficients) rhs += c * Rational(subset_esym(v.entries(), p));
        CHECK(Rational(ipow(v.sum(), k)) == rhs);
      }
    }
  CHECK_THROWS_AS(full_table(13, 3), ResourceLimitError);
  CHECK_THROWS_AS(full_table(3, 13), ResourceLimitError);
  CHECK_THROWS_AS(full_table(3, 4), DomainError);
}
