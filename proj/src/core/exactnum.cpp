#include "exactnum.hpp"

#include <deque>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

#include "errors.hpp"

namespace trisum {

namespace {

// Rows beyond this are not cached; binomial() falls back to GMP's own
// routine and binomial_ref() refuses.
constexpr long kPascalRowLimit = 1024;

class PascalRows {
 public:
  const BigInt& get(long n, long k) {
    if (n >= kPascalRowLimit) {
      throw std::out_of_range("binomial_ref: row " + std::to_string(n) +
                              " beyond cache limit");
    }
    const std::vector<BigInt>* row = nullptr;
    {
      std::shared_lock lock(mutex_);
      if (static_cast<long>(rows_.size()) > n) row = rows_[n].get();
    }
    if (row == nullptr) row = grow_to(n);
    return (*row)[k];
  }

 private:
  const std::vector<BigInt>* grow_to(long n) {
    std::unique_lock lock(mutex_);
    if (rows_.empty()) rows_.push_back(std::make_unique<std::vector<BigInt>>(1, 1));
    while (static_cast<long>(rows_.size()) <= n) {
      const auto& prev = *rows_.back();
      auto next = std::make_unique<std::vector<BigInt>>(prev.size() + 1);
      (*next)[0] = 1;
      (*next)[prev.size()] = 1;
      for (std::size_t k = 1; k < prev.size(); ++k) (*next)[k] = prev[k - 1] + prev[k];
      rows_.push_back(std::move(next));
    }
    return rows_[n].get();
  }

  std::shared_mutex mutex_;
  std::vector<std::unique_ptr<const std::vector<BigInt>>> rows_;
};

class FactorialTable {
 public:
  const BigInt& get(unsigned long n) {
    {
      std::shared_lock lock(mutex_);
      if (values_.size() > n) return values_[n];
    }
    std::unique_lock lock(mutex_);
    if (values_.empty()) values_.emplace_back(1);
    while (values_.size() <= n) {
      BigInt next = values_.back() * static_cast<unsigned long>(values_.size());
      values_.push_back(std::move(next));
    }
    return values_[n];
  }

 private:
  std::shared_mutex mutex_;
  std::deque<BigInt> values_;  // deque: push_back keeps references valid
};

PascalRows& pascal_rows() {
  static PascalRows rows;
  return rows;
}

FactorialTable& factorial_table() {
  static FactorialTable table;
  return table;
}

const BigInt& zero_bigint() {
  static const BigInt zero = 0;
  return zero;
}

void require_prime(unsigned long p, const char* where) {
  if (!is_prime(p)) {
    throw std::invalid_argument(std::string(where) + ": " + std::to_string(p) +
                                " is not prime");
  }
}

unsigned long remove_factor(BigInt& a, unsigned long p) {
  if (a == 0) return 0;
  BigInt pz = p;
  return mpz_remove(a.get_mpz_t(), a.get_mpz_t(), pz.get_mpz_t());
}

}  // namespace

long Valuation::value() const {
  if (!value_) throw std::logic_error("Valuation::value on +infinity");
  return *value_;
}

Valuation operator+(Valuation a, Valuation b) {
  if (a.is_infinite() || b.is_infinite()) return Valuation::infinite();
  return Valuation(*a.value_ + *b.value_);
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
  if (a.is_infinite()) return std::strong_ordering::greater;
  if (b.is_infinite()) return std::strong_ordering::less;
  return *a.value_ <=> *b.value_;
}

std::string Valuation::to_string() const {
  return value_ ? std::to_string(*value_) : std::string("inf");
}

BigInt binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: negative n " + std::to_string(n));
  if (k < 0 || k > n) return 0;
  if (n < kPascalRowLimit) return pascal_rows().get(n, k);
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

const BigInt& binomial_ref(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: negative n " + std::to_string(n));
  if (k < 0 || k > n) return zero_bigint();
  return pascal_rows().get(n, k);
}

const BigInt& binomial_into(long n, long k, BigInt& scratch) {
  if (n < kPascalRowLimit) return binomial_ref(n, k);
  scratch = binomial(n, k);
  return scratch;
}

BigInt binomial_via_factorials(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: negative n " + std::to_string(n));
  if (k < 0 || k > n) return 0;
  BigInt den = factorial(k) * factorial(n - k);
  BigInt out;
  mpz_divexact(out.get_mpz_t(), factorial(n).get_mpz_t(), den.get_mpz_t());
  return out;
}

const BigInt& factorial(unsigned long n) { return factorial_table().get(n); }

unsigned long ord_factorial(unsigned long p, unsigned long n) {
  require_prime(p, "ord_factorial");
  unsigned long total = 0;
  for (unsigned long q = n / p; q > 0; q /= p) total += q;
  return total;
}

Valuation valuation(const BigInt& a, unsigned long p) {
  require_prime(p, "valuation");
  if (a == 0) return Valuation::infinite();
  BigInt work = a;
  return Valuation(static_cast<long>(remove_factor(work, p)));
}

Valuation valuation(const ExactRational& q, unsigned long p) {
  require_prime(p, "valuation");
  if (q == 0) return Valuation::infinite();
  BigInt num = q.get_num();
  BigInt den = q.get_den();
  const long up = static_cast<long>(remove_factor(num, p));
  const long down = static_cast<long>(remove_factor(den, p));
  return Valuation(up - down);
}

bool congruent_mod_power(const ExactRational& a, const ExactRational& b,
                         unsigned long p, long k) {
  if (k < 1) throw std::invalid_argument("congruent_mod_power: k must be >= 1");
  return valuation(ExactRational(a - b), p).at_least(k);
}

BigInt double_factorial_odd(unsigned long r) {
  BigInt out = 1;
  for (unsigned long j = 1; j <= r; ++j) out *= 2 * j + 1;
  return out;
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (unsigned long d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<unsigned long> primes_between(unsigned long lo, unsigned long hi) {
  std::vector<unsigned long> out;
  for (unsigned long n = lo; n <= hi; ++n) {
    if (is_prime(n)) out.push_back(n);
    if (n == hi) break;  // hi == ULONG_MAX
  }
  return out;
}

ExactRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

BigInt to_integer(const ExactRational& q, std::string_view what) {
  if (q.get_den() != 1) {
    throw ArithmeticError(std::string(what) + " is not an integer: " + to_string(q));
  }
  return q.get_num();
}

std::string to_string(const BigInt& a) { return a.get_str(10); }

std::string to_string(const ExactRational& q) {
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

BigInt parse_bigint(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw std::invalid_argument("parse_bigint: no digits");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') {
      throw std::invalid_argument("parse_bigint: bad character in '" + std::string(text) + "'");
    }
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return BigInt(digits, 10);
}

ExactRational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExactRational(parse_bigint(text));
  return make_rational(parse_bigint(text.substr(0, slash)), parse_bigint(text.substr(slash + 1)));
}

void SmallDenominatorSum::add(const BigInt& num, long long den) {
  if (den == 0) throw std::invalid_argument("SmallDenominatorSum: zero denominator");
  BigInt d = static_cast<long>(den);
  if (mpz_divisible_p(common_.get_mpz_t(), d.get_mpz_t()) == 0) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), common_.get_mpz_t(), d.get_mpz_t());
    BigInt widen = abs(d) / g;
    common_ *= widen;
    total_ *= widen;
  }
  BigInt scale;
  mpz_divexact(scale.get_mpz_t(), common_.get_mpz_t(), d.get_mpz_t());
  mpz_addmul(total_.get_mpz_t(), num.get_mpz_t(), scale.get_mpz_t());
}

void SmallDenominatorSum::add(long long num, long long den) {
  add(BigInt(static_cast<long>(num)), den);
}

ExactRational SmallDenominatorSum::value() const { return make_rational(total_, common_); }

void MostlyIntegralSum::add(const BigInt& num, long long den) {
  if (den == 0) throw std::invalid_argument("MostlyIntegralSum: zero denominator");
  const unsigned long mag = static_cast<unsigned long>(den < 0 ? -den : den);
  if (mpz_divisible_ui_p(num.get_mpz_t(), mag) != 0) {
    mpz_divexact_ui(scratch_.get_mpz_t(), num.get_mpz_t(), mag);
    if (den < 0) {
      integral_ -= scratch_;
    } else {
      integral_ += scratch_;
    }
    return;
  }
  rest_ += make_rational(num, BigInt(static_cast<long>(den)));
}

ExactRational MostlyIntegralSum::value() const { return ExactRational(integral_) + rest_; }

}  // namespace trisum
