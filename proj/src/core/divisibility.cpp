#include "divisibility.hpp"

#include <mutex>
#include <stdexcept>

#include "parallel.hpp"

namespace trisum {

namespace {

long floor_div(long a, long d) {
  long q = a / d;
  if ((a % d != 0) && ((a < 0) != (d < 0))) --q;
  return q;
}

long floor_mod(long a, long d) { return a - d * floor_div(a, d); }

std::vector<std::pair<std::string, long long>> triple_params(const TripleKNM& t) {
  return {{"k", t.k}, {"n", t.n}, {"m", t.m}};
}

}  // namespace

void TripleKNM::require_valid() const {
  if (!valid()) {
    throw std::invalid_argument("triple " + to_string() + " violates 0 <= k <= n <= m <= 2n");
  }
}

std::string TripleKNM::to_string() const {
  return "(k=" + std::to_string(k) + ", n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")";
}

FloorSides floor_inequality_sides(const TripleKNM& t, unsigned long d) {
  t.require_valid();
  if (d == 0) throw std::invalid_argument("floor_inequality: d must be >= 1");
  const long k = t.k, n = t.n, m = t.m, dd = static_cast<long>(d);
  auto f = [dd](long x) { return floor_div(x, dd); };
  return {f(2 * n) + f(m) + f(m - k) + f(k),
          f(n - k) + f(k - m + n) + f(2 * m - 2 * k) + f(2 * k) + f(n) + f(m - n)};
}

bool floor_inequality_holds(const TripleKNM& t, unsigned long d) {
  const auto sides = floor_inequality_sides(t, d);
  return sides.lhs >= sides.rhs;
}

long ratio_valuation(const TripleKNM& t, unsigned long p) {
  t.require_valid();
  if (t.k + t.n < t.m) {
    throw std::invalid_argument("ratio_valuation: C(k, m-n) vanishes for " + t.to_string());
  }
  const unsigned long k = t.k, n = t.n, m = t.m;
  auto ord = [p](unsigned long x) { return static_cast<long>(ord_factorial(p, x)); };
  return ord(2 * n) + ord(m) + ord(m - k) + ord(k) - ord(n - k) - ord(k - m + n) -
         ord(2 * m - 2 * k) - ord(2 * k) - ord(n) - ord(m - n);
}

bool divisibility_lemma_holds(const TripleKNM& t) {
  t.require_valid();
  const long k = t.k, n = t.n, m = t.m;
  const BigInt numerator =
      binomial(2 * n, n) * binomial(n, k) * binomial(m, k) * binomial(k, m - n);
  const BigInt divisor = binomial(2 * k, k) * binomial(2 * m - 2 * k, m - k);
  return mpz_divisible_p(numerator.get_mpz_t(), divisor.get_mpz_t()) != 0;
}

bool divisibility_by_valuations(const TripleKNM& t) {
  t.require_valid();
  if (t.k + t.n < t.m) return true;  // numerator is zero
  for (unsigned long p : primes_between(2, 2ul * t.n)) {
    if (ratio_valuation(t, p) < 0) return false;
  }
  return true;
}

bool bober_inequality_holds(unsigned long n, unsigned long k, unsigned long d) {
  if (k > n) throw std::invalid_argument("bober_inequality: requires k <= n");
  if (d == 0) throw std::invalid_argument("bober_inequality: d must be >= 1");
  return (2 * n) / d + k / d >= n / d + (n - k) / d + (2 * k) / d;
}

CaseProbe probe_floor_cases(const TripleKNM& t, unsigned long d) {
  t.require_valid();
  const long k = t.k, n = t.n, m = t.m, dd = static_cast<long>(d);
  auto f = [dd](long x) { return floor_div(x, dd); };
  auto frac = [dd](long x) { return floor_mod(x, dd); };  // {x/d} scaled by d

  const long split = f(2 * m - 2 * k) - 2 * f(m - k);
  const long slack = f(m) - (f(k - m + n) + f(m - k) + f(m - n));
  // Both facts the first two branches lean on, checked rather than assumed.
  const bool m_fact = slack >= 0;
  const bool bober = bober_inequality_holds(n, k, d);

  CaseProbe probe;
  if (split == 0) {
    probe.which = FloorCase::EvenSplit;
    probe.facts_hold = m_fact && bober;
  } else if (split == 1 && slack >= 1) {
    probe.which = FloorCase::OddSplitWithSlack;
    probe.facts_hold = bober;
  } else if (split == 1 && slack == 0) {
    probe.which = FloorCase::OddSplitTight;
    const bool hypotheses = 2 * frac(m - k) >= dd && frac(k - m + n) + frac(m - k) + frac(m - n) < dd;
    const bool n_half = 2 * frac(n) >= dd;
    const bool k_half = 2 * frac(k) < dd;
    const bool doubled = f(2 * n) == 2 * f(n) + 1 && f(2 * k) == 2 * f(k);
    const bool n_split = f(n) >= f(n - k) + f(k);
    probe.facts_hold = hypotheses && n_half && k_half && doubled && n_split;
  } else {
    probe.which = FloorCase::Uncovered;
    probe.facts_hold = false;
  }
  return probe;
}

SweepOutcome sweep_divisibility(unsigned max_n, unsigned workers) {
  SweepOutcome out{"div4", 0, {}};
  std::mutex mutex;
  parallel_for(max_n + 1, workers, [&](std::size_t i) {
    const unsigned n = static_cast<unsigned>(i);
    std::size_t checked = 0;
    std::vector<CheckReport> failures;
    for (unsigned m = n; m <= 2 * n; ++m) {
      for (unsigned k = 0; k <= n; ++k) {
        const TripleKNM t{k, n, m};
        const bool exact = divisibility_lemma_holds(t);
        const bool by_val = divisibility_by_valuations(t);
        ++checked;
        if (exact && by_val) continue;
        const long kk = k, nn = n, mm = m;
        Witness w;
        w.lhs = to_string(BigInt(binomial(2 * nn, nn) * binomial(nn, kk) * binomial(mm, kk) *
                                 binomial(kk, mm - nn)));
        w.rhs = to_string(BigInt(binomial(2 * kk, kk) * binomial(2 * mm - 2 * kk, mm - kk)));
        w.extra = {{"exact_division", exact ? "true" : "false"},
                   {"valuation_route", by_val ? "true" : "false"}};
        failures.push_back(CheckReport::fail("div4", triple_params(t), std::move(w),
                                             exact != by_val ? "routes disagree" : "not divisible"));
      }
    }
    std::lock_guard lock(mutex);
    out.checked += checked;
    for (auto& f : failures) out.failures.push_back(std::move(f));
  });
  return out;
}

SweepOutcome sweep_floor_inequality(unsigned max_n, unsigned long max_d, unsigned workers) {
  SweepOutcome out{"fourcases", 0, {}};
  std::mutex mutex;
  parallel_for(max_n + 1, workers, [&](std::size_t i) {
    const unsigned n = static_cast<unsigned>(i);
    std::size_t checked = 0;
    std::vector<CheckReport> failures;
    for (unsigned m = n; m <= 2 * n; ++m) {
      for (unsigned k = 0; k <= n; ++k) {
        for (unsigned long d = 1; d <= max_d; ++d) {
          const TripleKNM t{k, n, m};
          const auto sides = floor_inequality_sides(t, d);
          ++checked;
          if (sides.lhs >= sides.rhs) continue;
          auto params = triple_params(t);
          params.emplace_back("d", static_cast<long long>(d));
          Witness w;
          w.lhs = std::to_string(sides.lhs);
          w.rhs = std::to_string(sides.rhs);
          failures.push_back(CheckReport::fail("fourcases", std::move(params), std::move(w)));
        }
      }
    }
    std::lock_guard lock(mutex);
    out.checked += checked;
    for (auto& f : failures) out.failures.push_back(std::move(f));
  });
  return out;
}

SweepOutcome sweep_bober(unsigned max_n, unsigned long max_d) {
  SweepOutcome out{"bober", 0, {}};
  for (unsigned long n = 0; n <= max_n; ++n) {
    for (unsigned long k = 0; k <= n; ++k) {
      for (unsigned long d = 1; d <= max_d; ++d) {
        ++out.checked;
        if (bober_inequality_holds(n, k, d)) continue;
        Witness w;
        w.lhs = std::to_string((2 * n) / d + k / d);
        w.rhs = std::to_string(n / d + (n - k) / d + (2 * k) / d);
        out.failures.push_back(CheckReport::fail(
            "bober",
            {{"n", static_cast<long long>(n)}, {"k", static_cast<long long>(k)},
             {"d", static_cast<long long>(d)}},
            std::move(w)));
      }
    }
  }
  return out;
}

SweepOutcome sweep_floor_cases(unsigned max_n, unsigned long max_d) {
  SweepOutcome out{"fourcases-split", 0, {}};
  for (unsigned n = 0; n <= max_n; ++n) {
    for (unsigned m = n; m <= 2 * n; ++m) {
      for (unsigned k = 0; k <= n; ++k) {
        for (unsigned long d = 1; d <= max_d; ++d) {
          const TripleKNM t{k, n, m};
          const auto probe = probe_floor_cases(t, d);
          ++out.checked;
          if (probe.facts_hold) continue;
          auto params = triple_params(t);
          params.emplace_back("d", static_cast<long long>(d));
          Witness w;
          w.extra = {{"case", std::to_string(static_cast<int>(probe.which))}};
          out.failures.push_back(CheckReport::fail("fourcases-split", std::move(params),
                                                   std::move(w)));
        }
      }
    }
  }
  return out;
}

}  // namespace trisum
