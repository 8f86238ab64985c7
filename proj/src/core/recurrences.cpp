#include "recurrences.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <stdexcept>

#include "parallel.hpp"
#include "sequences.hpp"

namespace trisum {

IntPolynomial::IntPolynomial(std::vector<BigInt> ascending) : coeffs_(std::move(ascending)) {
  trim();
}

IntPolynomial IntPolynomial::descending(std::initializer_list<long long> coeffs) {
  std::vector<BigInt> asc;
  asc.reserve(coeffs.size());
  for (auto it = std::rbegin(coeffs); it != std::rend(coeffs); ++it) {
    asc.emplace_back(static_cast<long>(*it));
  }
  return IntPolynomial(std::move(asc));
}

IntPolynomial IntPolynomial::constant(long long c) {
  return IntPolynomial({BigInt(static_cast<long>(c))});
}

IntPolynomial IntPolynomial::product(std::initializer_list<IntPolynomial> factors) {
  IntPolynomial out = constant(1);
  for (const auto& f : factors) out = out * f;
  return out;
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPolynomial::operator()(const BigInt& n) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= n;
    acc += *it;
  }
  return acc;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<BigInt> out(coeffs_.size() + other.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), coeffs_[i].get_mpz_t(), other.coeffs_[j].get_mpz_t());
    }
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& other) const {
  std::vector<BigInt> out(std::max(coeffs_.size(), other.coeffs_.size()), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) out[i] += other.coeffs_[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<BigInt> out = coeffs_;
  for (auto& c : out) c = -c;
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::shifted(long s) const {
  // Horner in polynomial arithmetic: p(n+s) = (...(a_d (n+s) + a_{d-1})(n+s) + ...).
  const IntPolynomial lin({BigInt(s), BigInt(1)});
  IntPolynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * lin + IntPolynomial({*it});
  }
  return acc;
}

RecurrenceId parse_recurrence_id(std::string_view name) {
  if (name == "R5") return RecurrenceId::R5;
  if (name == "R3") return RecurrenceId::R3;
  if (name == "W5") return RecurrenceId::W5;
  if (name == "W3") return RecurrenceId::W3;
  throw std::invalid_argument("unknown recurrence '" + std::string(name) +
                              "' (valid: R5 R3 W5 W3 combX combZ)");
}

CombinationId parse_combination_id(std::string_view name) {
  if (name == "combX") return CombinationId::CombX;
  if (name == "combZ") return CombinationId::CombZ;
  throw std::invalid_argument("unknown combination '" + std::string(name) +
                              "' (valid: combX combZ)");
}

BigInt apply_recurrence(const PolynomialRecurrence& rec, std::span<const BigInt> window, long n) {
  if (window.size() < rec.coeffs.size()) {
    throw std::invalid_argument(rec.name + ": window needs " + std::to_string(rec.coeffs.size()) +
                                " values, got " + std::to_string(window.size()));
  }
  const BigInt nn = n;
  BigInt total = 0;
  for (std::size_t j = 0; j < rec.coeffs.size(); ++j) {
    const BigInt c = rec.coeffs[j](nn);
    mpz_addmul(total.get_mpz_t(), c.get_mpz_t(), window[j].get_mpz_t());
  }
  return total;
}

namespace {

bool is_x_family(RecurrenceId id) { return id == RecurrenceId::R5 || id == RecurrenceId::R3; }

}  // namespace

std::vector<BigInt> annihilated_sequence(RecurrenceId id, unsigned count, unsigned workers) {
  std::vector<BigInt> out(count);
  const bool x = is_x_family(id);
  // Large n first so the expensive tail starts early.
  parallel_for(count, workers, [&](std::size_t i) {
    const unsigned n = count - 1 - static_cast<unsigned>(i);
    out[n] = x ? eval_X(n) : eval_Y(n);
  });
  return out;
}

CheckReport verify_annihilates(RecurrenceId id, unsigned max_n, unsigned workers) {
  const auto& rec = recurrence(id);
  const std::vector<std::pair<std::string, long long>> params = {{"max_n", max_n}};
  if (max_n < rec.order()) {
    throw std::invalid_argument(rec.name + ": max_n must be >= " + std::to_string(rec.order()));
  }
  return timed([&] {
    const auto seq = annihilated_sequence(id, max_n + 1, workers);
    std::vector<long> degenerate;
    for (long n = 0; n <= static_cast<long>(max_n - rec.order()); ++n) {
      if (rec.coeffs.back()(n) == 0) degenerate.push_back(n);
      const BigInt r = apply_recurrence(rec, std::span(seq).subspan(n, rec.order() + 1), n);
      if (r != 0) {
        Witness w = relation_witness(r, BigInt(0));
        w.extra.emplace_back("n", std::to_string(n));
        return CheckReport::fail(rec.name, params, std::move(w),
                                 "non-zero residual at n=" + std::to_string(n));
      }
    }
    Witness w;
    std::string listed;
    for (long n : degenerate) listed += (listed.empty() ? "" : ",") + std::to_string(n);
    w.extra.emplace_back("top_coefficient_zero_at", listed.empty() ? "none" : listed);
    return CheckReport::pass(rec.name, params, std::move(w));
  });
}

std::size_t OperatorCombination::span() const {
  std::size_t out = recurrence(big).order();
  const std::size_t small_order = recurrence(small).order();
  for (const auto& [shift, poly] : small_terms) {
    out = std::max(out, static_cast<std::size_t>(shift) + small_order);
  }
  return out;
}

BigInt apply_combination(const OperatorCombination& comb, std::span<const BigInt> u, long n) {
  if (n < 0 || u.size() < static_cast<std::size_t>(n) + comb.span() + 1) {
    throw std::invalid_argument(comb.name + ": sequence too short at n=" + std::to_string(n));
  }
  const auto& big = recurrence(comb.big);
  const auto& small = recurrence(comb.small);
  const BigInt nn = n;
  BigInt total = comb.big_multiplier(nn) * apply_recurrence(big, u.subspan(n), n);
  for (const auto& [shift, poly] : comb.small_terms) {
    total += poly(nn) * apply_recurrence(small, u.subspan(n + shift), n + shift);
  }
  return total;
}

CheckReport verify_operator_combination(CombinationId id, unsigned trials, unsigned max_n,
                                        std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const auto& comb = combination(id);
  const std::vector<std::pair<std::string, long long>> params = {
      {"trials", trials}, {"max_n", max_n}, {"seed", static_cast<long long>(seed)}};
  return timed([&] {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> draw(-1'000'000, 1'000'000);
    const std::size_t length = max_n + comb.span() + 1;
    std::vector<BigInt> u(length);
    for (unsigned t = 0; t < trials; ++t) {
      for (auto& x : u) x = draw(rng);
      for (long n = 0; n <= static_cast<long>(max_n); ++n) {
        const BigInt r = apply_combination(comb, u, n);
        if (r != 0) {
          Witness w = relation_witness(r, BigInt(0));
          w.extra = {{"trial", std::to_string(t)}, {"n", std::to_string(n)},
                     {"seed", std::to_string(seed)}};
          return CheckReport::fail(comb.name, params, std::move(w));
        }
      }
    }
    Witness w;
    w.extra.emplace_back("seed", std::to_string(seed));
    return CheckReport::pass(comb.name, params, std::move(w));
  });
}

CheckReport verify_trailing_divisibility(RecurrenceId id, unsigned max_n, unsigned workers) {
  if (id != RecurrenceId::R3 && id != RecurrenceId::W3) {
    throw std::invalid_argument("trailing divisibility is stated for R3 and W3 only");
  }
  const auto& rec = recurrence(id);
  const std::string name = rec.name + "-trailing";
  const std::vector<std::pair<std::string, long long>> params = {{"max_n", max_n}};
  return timed([&] {
    const auto seq = annihilated_sequence(id, max_n + 1, workers);
    for (long n = 0; n <= static_cast<long>(max_n); ++n) {
      // The sign of c_0 is irrelevant to divisibility.
      const BigInt value = rec.coeffs.front()(n) * seq[n];
      const BigInt modulus = n + 1;
      if (mpz_divisible_p(value.get_mpz_t(), modulus.get_mpz_t()) == 0) {
        Witness w;
        w.lhs = to_string(value);
        w.rhs = to_string(modulus);
        w.extra.emplace_back("n", std::to_string(n));
        return CheckReport::fail(name, params, std::move(w));
      }
    }
    return CheckReport::pass(name, params);
  });
}

CheckReport verify_gcd_facts(unsigned long max_n) {
  const std::vector<std::pair<std::string, long long>> params = {
      {"max_n", static_cast<long long>(max_n)}};
  const IntPolynomial cubic = IntPolynomial::descending({63, 390, 785, 506});
  return timed([&] {
    BigInt g, a, b;
    for (unsigned long n = 0; n <= max_n; ++n) {
      a = n + 1;
      b = 7 * n + 15;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const bool first = g == 1 || g == 2 || g == 4 || g == 8;
      BigInt g2;
      const BigInt c = cubic(BigInt(n));
      mpz_gcd(g2.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
      const bool second = 48 % g2.get_ui() == 0;
      if (!first || !second) {
        Witness w;
        w.extra = {{"n", std::to_string(n)},
                   {"gcd(n+1,7n+15)", to_string(g)},
                   {"gcd(n+1,cubic)", to_string(g2)}};
        return CheckReport::fail("gcd", params, std::move(w));
      }
    }
    return CheckReport::pass("gcd", params);
  });
}

}  // namespace trisum
