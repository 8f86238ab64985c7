#pragma once

// Linear recurrences with integer-polynomial coefficients,
//
//     sum_{j=0}^{d} c_j(n) u_{n+j} = 0,
//
// kept as plain data tables. X_n is annihilated by R5 (order 5) and R3
// (order 3); Y_n = Z_n / 9 by W5 and W3. The operator combinations combX and
// combZ express R5 (resp. W5) as a polynomial-weighted sum of shifts of R3
// (resp. W3) and vanish on every sequence, not just on X or Y.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exactnum.hpp"
#include "report.hpp"

namespace trisum {

class IntPolynomial {
 public:
  IntPolynomial() = default;
  /// Coefficients from the constant term upward; trailing zeros are trimmed.
  explicit IntPolynomial(std::vector<BigInt> ascending);

  /// Coefficients listed from the leading term down, as polynomials are
  /// usually written: descending({7, 15}) is 7n + 15.
  static IntPolynomial descending(std::initializer_list<long long> coeffs);
  static IntPolynomial constant(long long c);
  /// Product of the given factors.
  static IntPolynomial product(std::initializer_list<IntPolynomial> factors);

  BigInt operator()(const BigInt& n) const;
  BigInt operator()(long n) const { return (*this)(BigInt(n)); }

  IntPolynomial operator*(const IntPolynomial& other) const;
  IntPolynomial operator+(const IntPolynomial& other) const;
  IntPolynomial operator-() const;
  /// The polynomial n -> p(n + s).
  IntPolynomial shifted(long s) const;

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

enum class RecurrenceId { R5, R3, W5, W3 };

struct PolynomialRecurrence {
  RecurrenceId id;
  std::string name;
  std::vector<IntPolynomial> coeffs;  // c_0 .. c_d

  std::size_t order() const { return coeffs.size() - 1; }
};

const PolynomialRecurrence& recurrence(RecurrenceId id);
RecurrenceId parse_recurrence_id(std::string_view name);

/// sum_j c_j(n) window[j]; window must hold at least order()+1 values
/// u_n .. u_{n+d}. Throws std::invalid_argument when it is too short.
BigInt apply_recurrence(const PolynomialRecurrence& rec, std::span<const BigInt> window, long n);

/// Values of the annihilated sequence (X for R5/R3, Y for W5/W3) for 0..count-1.
std::vector<BigInt> annihilated_sequence(RecurrenceId id, unsigned count, unsigned workers = 1);

/// Pass iff the recurrence evaluates to zero at every n in [0, max_n - order].
/// The report also lists every n at which the top coefficient c_d(n) is zero.
CheckReport verify_annihilates(RecurrenceId id, unsigned max_n, unsigned workers = 1);

enum class CombinationId { CombX, CombZ };

/// multiplier(n) * big_n + sum_t shift_multiplier_t(n) * small_{n + shift_t}
struct OperatorCombination {
  CombinationId id;
  std::string name;
  RecurrenceId big;
  RecurrenceId small;
  IntPolynomial big_multiplier;
  std::vector<std::pair<long, IntPolynomial>> small_terms;

  /// Number of sequence values past n the combination reads.
  std::size_t span() const;
};

const OperatorCombination& combination(CombinationId id);
CombinationId parse_combination_id(std::string_view name);

/// Evaluates the combination at n on the sequence u (u[0] is u_0).
BigInt apply_combination(const OperatorCombination& comb, std::span<const BigInt> u, long n);

/// For `trials` seeded random integer sequences with entries in [-10^6, 10^6],
/// pass iff the combination is zero at every n in [0, max_n].
CheckReport verify_operator_combination(CombinationId id, unsigned trials, unsigned max_n,
                                        std::uint64_t seed);

/// (n+1) | c_0(n) * u_n for n in [0, max_n], where c_0 is R3's (or W3's)
/// trailing coefficient and u is X (or Y).
CheckReport verify_trailing_divisibility(RecurrenceId id, unsigned max_n, unsigned workers = 1);

/// gcd(n+1, 7n+15) in {1,2,4,8} and gcd(n+1, 63n^3+390n^2+785n+506) | 48, n <= max_n.
CheckReport verify_gcd_facts(unsigned long max_n);

}  // namespace trisum
