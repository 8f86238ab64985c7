#include "congruences.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "errors.hpp"
#include "parallel.hpp"
#include "sequences.hpp"

namespace trisum {

namespace {

using Params = std::vector<std::pair<std::string, long long>>;

long sign_pow(unsigned long e) { return e % 2 == 0 ? 1 : -1; }

void require_odd_prime(unsigned long p, const std::string& what) {
  if (p < 3 || !is_prime(p)) throw DomainError(what + ": p must be an odd prime");
}

void require_prime_above_3(unsigned long p, const std::string& what) {
  if (p <= 3 || !is_prime(p)) throw DomainError(what + ": p must be a prime > 3");
}

CheckReport divisibility_report(const std::string& check, unsigned n, const BigInt& value) {
  const Params params = {{"n", n}};
  if (mpz_divisible_ui_p(value.get_mpz_t(), n) != 0) return CheckReport::pass(check, params);
  Witness w;
  w.lhs = to_string(value);
  w.rhs = std::to_string(n);
  BigInt rem;
  mpz_fdiv_r_ui(rem.get_mpz_t(), value.get_mpz_t(), n);
  w.extra.emplace_back("remainder", to_string(rem));
  return CheckReport::fail(check, params, std::move(w));
}

ExactRational new5_target(unsigned long p) {
  const long pp = static_cast<long>(p);
  return ExactRational(BigInt(4 * pp * sign_pow((p - 1) / 2) - pp * pp));
}

ExactRational new6_target(unsigned long p) {
  const long pp = static_cast<long>(p);
  return ExactRational(BigInt(12 * pp * sign_pow((p - 1) / 2) - 17 * pp * pp));
}

CheckReport congruence_report(const std::string& check, Params params, const ExactRational& lhs,
                              const ExactRational& rhs, unsigned long p, long power) {
  Witness w = relation_witness(lhs, rhs, p);
  if (w.difference_valuation->at_least(power)) return CheckReport::pass(check, std::move(params), std::move(w));
  return CheckReport::fail(check, std::move(params), std::move(w),
                           "valuation of difference below " + std::to_string(power));
}

SweepOutcome sweep_divisibility(SequenceId id, const std::string& check, long factor,
                                unsigned max_n, unsigned workers) {
  SweepOutcome out{check, 0, {}};
  if (max_n == 0) return out;
  const auto sums = weighted_square_prefix(id, max_n, workers);
  for (unsigned n = 1; n <= max_n; ++n) {
    ++out.checked;
    const BigInt value = factor * to_integer(sums[n], check);
    CheckReport r = divisibility_report(check, n, value);
    if (!r.passed()) out.failures.push_back(std::move(r));
  }
  return out;
}

SweepOutcome sweep_supercongruence(SequenceId id, const std::string& check,
                                   std::span<const unsigned long> primes, unsigned workers) {
  SweepOutcome out{check, 0, {}};
  unsigned long top = 0;
  for (unsigned long p : primes) {
    // Validate the whole list before doing any work.
    if (id.kind == SequenceKind::W) {
      require_prime_above_3(p, check);
    } else {
      require_odd_prime(p, check);
    }
    top = std::max(top, p);
  }
  if (primes.empty()) return out;
  const auto sums = weighted_square_prefix(id, static_cast<unsigned>(top), workers);
  for (unsigned long p : primes) {
    ++out.checked;
    const ExactRational target = id.kind == SequenceKind::W ? new6_target(p) : new5_target(p);
    CheckReport r = congruence_report(check, {{"p", static_cast<long long>(p)}}, sums[p], target, p, 3);
    if (!r.passed()) out.failures.push_back(std::move(r));
  }
  return out;
}

CheckReport lemma_divisibility(const std::string& check, bool x_family, unsigned max_n,
                               unsigned workers) {
  const Params params = {{"max_n", max_n}};
  return timed([&] {
    std::vector<BigInt> values(max_n + 1);
    parallel_for(max_n + 1, workers, [&](std::size_t i) {
      const unsigned n = max_n - static_cast<unsigned>(i);
      values[n] = x_family ? eval_X(n) : eval_Z(n);
    });
    for (unsigned n = 0; n <= max_n; ++n) {
      if (mpz_divisible_ui_p(values[n].get_mpz_t(), n + 1) == 0) {
        Witness w;
        w.lhs = to_string(values[n]);
        w.rhs = std::to_string(n + 1);
        w.extra.emplace_back("n", std::to_string(n));
        return CheckReport::fail(check, params, std::move(w));
      }
    }
    return CheckReport::pass(check, params);
  });
}

}  // namespace

CheckReport check_divisibility_R(unsigned n) {
  if (n == 0) throw DomainError("eq5: n must be >= 1");
  return timed([&] {
    const BigInt value = to_integer(weighted_square_sum(SequenceId::R(), n), "eq5");
    return divisibility_report("eq5", n, value);
  });
}

CheckReport check_divisibility_W(unsigned n) {
  if (n == 0) throw DomainError("eq6: n must be >= 1");
  return timed([&] {
    const BigInt value = 9 * to_integer(weighted_square_sum(SequenceId::W(), n), "eq6");
    return divisibility_report("eq6", n, value);
  });
}

CheckReport check_supercongruence_R(unsigned long p) {
  require_odd_prime(p, "new5");
  return timed([&] {
    return congruence_report("new5", {{"p", static_cast<long long>(p)}},
                             weighted_square_sum(SequenceId::R(), static_cast<unsigned>(p)),
                             new5_target(p), p, 3);
  });
}

CheckReport check_supercongruence_W(unsigned long p) {
  require_prime_above_3(p, "new6");
  return timed([&] {
    return congruence_report("new6", {{"p", static_cast<long long>(p)}},
                             weighted_square_sum(SequenceId::W(), static_cast<unsigned>(p)),
                             new6_target(p), p, 3);
  });
}

SweepOutcome sweep_divisibility_R(unsigned max_n, unsigned workers) {
  return sweep_divisibility(SequenceId::R(), "eq5", 1, max_n, workers);
}

SweepOutcome sweep_divisibility_W(unsigned max_n, unsigned workers) {
  return sweep_divisibility(SequenceId::W(), "eq6", 9, max_n, workers);
}

SweepOutcome sweep_supercongruence_R(std::span<const unsigned long> primes, unsigned workers) {
  return sweep_supercongruence(SequenceId::R(), "new5", primes, workers);
}

SweepOutcome sweep_supercongruence_W(std::span<const unsigned long> primes, unsigned workers) {
  return sweep_supercongruence(SequenceId::W(), "new6", primes, workers);
}

ExactRational alternating_double_sum(unsigned long p, long c) {
  const long pp = static_cast<long>(p);
  const BigInt p2 = BigInt(pp) * pp;
  ExactRational total = 0;
  for (long i = 0; i < pp; ++i) {
    SmallDenominatorSum row;
    for (long j = 0; j < pp; ++j) {
      const long long den = static_cast<long long>(2 * i - c) * (2 * j - c) * (i + j + 1);
      row.add((i + j) % 2 == 0 ? p2 : BigInt(-p2), den);
    }
    total += row.value();
  }
  return total;
}

DoubleSumLemma parse_double_sum_lemma(std::string_view name) {
  if (name == "p2i1") return DoubleSumLemma::P2i1;
  if (name == "p2i3") return DoubleSumLemma::P2i3;
  throw std::invalid_argument("unknown lemma '" + std::string(name) + "' (valid: p2i1 p2i3)");
}

CheckReport check_double_sum_lemma(DoubleSumLemma which, unsigned long p) {
  const long e = sign_pow((p - 1) / 2);
  const long pp = static_cast<long>(p);
  if (which == DoubleSumLemma::P2i1) {
    require_odd_prime(p, "p2i1");
    return timed([&] {
      return congruence_report("p2i1", {{"p", pp}}, alternating_double_sum(p, 1),
                               ExactRational(BigInt(4 * pp * e + 3 * pp * pp)), p, 3);
    });
  }
  require_prime_above_3(p, "p2i3");
  return timed([&] {
    return congruence_report("p2i3", {{"p", pp}}, alternating_double_sum(p, 3),
                             make_rational(BigInt(4 * pp * e + pp * pp), 3), p, 3);
  });
}

CheckReport check_lemma_X(unsigned max_n, unsigned workers) {
  return lemma_divisibility("X", true, max_n, workers);
}

CheckReport check_lemma_Y(unsigned max_n, unsigned workers) {
  return lemma_divisibility("Y", false, max_n, workers);
}

TwoSquares two_square_decomposition(unsigned long p) {
  if (!is_prime(p) || p % 4 != 1) throw DomainError("two_square_decomposition: p must be a prime == 1 (mod 4)");
  for (long y = 0; static_cast<unsigned long>(y * y) < p; ++y) {
    const unsigned long rest = p - static_cast<unsigned long>(y * y);
    auto x = static_cast<long>(std::llround(std::sqrt(static_cast<double>(rest))));
    while (static_cast<unsigned long>(x * x) > rest) --x;
    while (static_cast<unsigned long>((x + 1) * (x + 1)) <= rest) ++x;
    if (static_cast<unsigned long>(x * x) != rest || x % 2 == 0) continue;
    if (((x % 4) + 4) % 4 != 1) x = -x;
    return {x, y};
  }
  throw std::logic_error("no two-square decomposition found");
}

CheckReport check_sun_half_congruence(unsigned long p) {
  const TwoSquares ts = two_square_decomposition(p);
  return timed([&] {
    const long pp = static_cast<long>(p);
    const BigInt lhs = eval_R(static_cast<unsigned>((p - 1) / 2));
    const BigInt rhs = pp - sign_pow((p - 1) / 4) * 2 * ts.x;
    CheckReport r = congruence_report("sun", {{"p", pp}}, ExactRational(lhs), ExactRational(rhs), p, 2);
    r.witness.extra.emplace_back("x", std::to_string(ts.x));
    r.witness.extra.emplace_back("y", std::to_string(ts.y));
    return r;
  });
}

}  // namespace trisum
