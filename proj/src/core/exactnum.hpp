#pragma once

// Exact integer/rational substrate: binomials, factorials, p-adic valuations
// and congruences between rationals. Every other module computes on top of
// these; nothing in the project touches floating point.

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trisum {

using BigInt = mpz_class;
using ExactRational = mpq_class;

/// p-adic order of a rational: a finite integer, or +infinity for zero.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(); }
  explicit Valuation(long v) : value_(v) {}

  bool is_infinite() const { return !value_.has_value(); }
  /// Throws std::logic_error on the infinite valuation.
  long value() const;

  /// True iff the valuation is >= k (always true for +infinity).
  bool at_least(long k) const { return is_infinite() || *value_ >= k; }

  friend Valuation operator+(Valuation a, Valuation b);
  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);

  /// Decimal value, or "inf".
  std::string to_string() const;

 private:
  Valuation() = default;
  std::optional<long> value_;
};

/// C(n, k) with the vanishing convention: 0 when k < 0 or k > n.
/// Throws std::invalid_argument when n < 0.
BigInt binomial(long n, long k);

/// Same value as binomial(), returned by reference into a process-wide cache of
/// Pascal rows. The reference stays valid for the lifetime of the process.
const BigInt& binomial_ref(long n, long k);

/// binomial_ref() when row n is cached, otherwise computes into `scratch` and
/// returns it. Lets hot loops avoid copies without a hard size limit.
const BigInt& binomial_into(long n, long k, BigInt& scratch);

/// C(n, k) as n! / (k! (n-k)!) from the factorial cache, with exact division.
/// Kept as an independent route to cross-check binomial_ref.
BigInt binomial_via_factorials(long n, long k);

/// n!, cached. Safe to call from several threads.
const BigInt& factorial(unsigned long n);

/// ord_p(n!) by Legendre's formula. Throws std::invalid_argument unless p is prime.
unsigned long ord_factorial(unsigned long p, unsigned long n);

Valuation valuation(const BigInt& a, unsigned long p);
Valuation valuation(const ExactRational& q, unsigned long p);

/// a == b (mod p^k) in the sense v_p(a - b) >= k. No p-integrality is
/// required of a or b individually.
bool congruent_mod_power(const ExactRational& a, const ExactRational& b,
                         unsigned long p, long k);

/// (2r+1)!! = 1 * 3 * 5 * ... * (2r+1).
BigInt double_factorial_odd(unsigned long r);

bool is_prime(unsigned long n);
std::vector<unsigned long> primes_between(unsigned long lo, unsigned long hi);

/// Reduced num/den; throws std::invalid_argument on a zero denominator.
ExactRational make_rational(const BigInt& num, const BigInt& den);

/// Throws ArithmeticError naming `what` if q is not an integer.
BigInt to_integer(const ExactRational& q, std::string_view what);

std::string to_string(const BigInt& a);
/// Always "num/den", including den = 1.
std::string to_string(const ExactRational& q);
/// Accepts an optional sign and decimal digits. Throws std::invalid_argument.
BigInt parse_bigint(std::string_view text);
/// Accepts "num/den" or a bare integer.
ExactRational parse_rational(std::string_view text);

/// Running sum of num/den terms whose denominators are machine integers.
/// Keeps a single common denominator (the lcm of those seen) so each term
/// costs one small division and one multiply-add instead of a gcd reduction.
class SmallDenominatorSum {
 public:
  void add(const BigInt& num, long long den);
  void add(long long num, long long den);
  ExactRational value() const;

 private:
  BigInt total_ = 0;
  BigInt common_ = 1;
};

/// Running sum for terms that are usually integers (num divisible by den).
/// Integral terms take a fast path; the rest go through exact rationals.
class MostlyIntegralSum {
 public:
  void add(const BigInt& num, long long den);
  void add(const ExactRational& q) { rest_ += q; }
  ExactRational value() const;

 private:
  BigInt integral_ = 0;
  ExactRational rest_ = 0;
  BigInt scratch_;
};

}  // namespace trisum
