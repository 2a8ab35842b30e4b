#pragma once

#include "l1disc/kernels.hpp"
#include "l1disc/rational.hpp"

#include <map>
#include <vector>

namespace l1disc {

/// A_1^n(k) = 2^-n sum_j C(n,j) (1 + n - 2j)^k. Throws DomainError for even k.
Rational a1(unsigned n, unsigned k);

inline constexpr unsigned kMaxBruteForceN = 20;

/// Average of (1 + eps_1 + ... + eps_n)^k over all 2^n sign vectors.
Rational a1_bruteforce(unsigned n, unsigned k, Exec exec = Exec::parallel);

/// Coefficients of t^k / k! of a power series with only odd terms.
struct FormalOddSeries {
  unsigned degree = 0;
  std::vector<Integer> coefficients;  // index k, zero at even k

  const Integer& at(unsigned k) const { return coefficients.at(k); }
};

inline constexpr unsigned kMaxSeriesDegree = 200;

/// sinh(t) cosh(t)^n truncated at degree K, by exact series products.
FormalOddSeries generating_coefficients(unsigned n, unsigned degree);

/// Entries in {-1,+1}.
class SignVector {
 public:
  explicit SignVector(std::vector<int> entries);
  /// Bit j of `mask` set means entry j is -1.
  static SignVector from_mask(unsigned length, std::uint64_t mask);

  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<int>& entries() const noexcept { return entries_; }
  long sum() const;

 private:
  std::vector<int> entries_;
};

/// e_0 .. e_m, the coefficients of prod (1 + v_j t), m = length.
std::vector<Integer> elementary_symmetric(const SignVector& v);

/// p_0 .. p_kmax.
std::vector<Integer> power_sums(const SignVector& v, unsigned kmax);

struct NewtonResult {
  bool identity = false;        // k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} p_i
  bool specialization = false;  // p_k = p_1 for odd k, p_k = length for even k
  bool passed() const { return identity && specialization; }
};

/// Needs 1 <= k <= length.
NewtonResult newton_check(const SignVector& v, unsigned k);

inline constexpr unsigned kMaxTableN = 12;
inline constexpr unsigned kMaxTableK = 11;

/// (z_0 + ... + z_n)^k = sum over odd p of A_p^n(k) e_p(z) whenever z_j^2 = 1.
struct OddCoefficientTable {
  unsigned n = 0;
  unsigned k = 0;
  std::map<unsigned, Rational> coefficients;  // odd p <= min(k, n+1)
  bool all_integer = false;
  bool reconstructed = false;  // identity re-checked at all 2^(n+1) sign vectors

  /// Zero outside the stored range.
  Rational coefficient(unsigned p) const;
};

/// Solves for A_p^n(k) from the values at every sign vector, then verifies the
/// reconstruction. n <= 12, odd k <= 11.
OddCoefficientTable full_table(unsigned n, unsigned k, Exec exec = Exec::parallel);

}  // namespace l1disc
