#include "identities.hpp"

#include <mutex>
#include <stdexcept>

#include "errors.hpp"
#include "parallel.hpp"
#include "sequences.hpp"

namespace trisum {

namespace {

ExactRational Q(const BigInt& a) { return ExactRational(a); }

BigInt C(long n, long k) { return binomial(n, k); }

// q rounded toward zero; equal to q exactly when q is an integer.
ExactRational truncated(const ExactRational& q) {
  BigInt t;
  mpz_tdiv_q(t.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return ExactRational(t);
}

std::vector<IdentityEntry> build_catalog() {
  std::vector<IdentityEntry> cat;
  auto any = [](std::span<const long>) { return true; };

  cat.push_back({IdentityId::I1, "I1",
                 "C(k,i)C(k+i,i)C(k,j)C(k+j,j) = sum_r C(i+j,i)C(j,i-r)C(j+r,r)C(k,j+r)C(k+j+r,j+r)"
                 " = sum_s C(i+j,i)C(j,s-i)C(s,j)C(k,s)C(k+s,s)",
                 {"k", "i", "j"},
                 any,
                 {}});
  {
    auto lhs = [](std::span<const long> a) -> ExactRational {
      const long k = a[0], i = a[1], j = a[2];
      return Q(C(k, i) * C(k + i, i) * C(k, j) * C(k + j, j));
    };
    cat.back().relations.push_back(
        {"sum over r", lhs, [](std::span<const long> a) -> ExactRational {
           const long k = a[0], i = a[1], j = a[2];
           BigInt total = 0;
           for (long r = 0; r <= i; ++r) {
             total += C(i + j, i) * C(j, i - r) * C(j + r, r) * C(k, j + r) * C(k + j + r, j + r);
           }
           return Q(total);
         }});
    cat.back().relations.push_back(
        {"sum over s", lhs, [](std::span<const long> a) -> ExactRational {
           const long k = a[0], i = a[1], j = a[2];
           BigInt total = 0;
           for (long s = j; s <= i + j; ++s) {
             total += C(i + j, i) * C(j, s - i) * C(s, j) * C(k, s) * C(k + s, s);
           }
           return Q(total);
         }});
  }

  cat.push_back({IdentityId::I2, "I2", "C(k,i)C(k+i,i) = C(k+i,2i)C(2i,i)", {"k", "i"}, any,
                 {{"", [](std::span<const long> a) -> ExactRational { return Q(C(a[0], a[1]) * C(a[0] + a[1], a[1])); },
                   [](std::span<const long> a) -> ExactRational {
                     return Q(C(a[0] + a[1], 2 * a[1]) * C(2 * a[1], a[1]));
                   }}}});

  cat.push_back({IdentityId::I3, "I3",
                 "sum_{k=s}^{n-1} (2k+1)C(k,s)C(k+s,s) = n C(n+s,2s)C(2s,s)(n-s)/(s+1)",
                 {"n", "s"},
                 [](std::span<const long> a) { return a[1] >= 0 && a[1] <= a[0]; },
                 {{"", [](std::span<const long> a) -> ExactRational {
                     const long n = a[0], s = a[1];
                     BigInt total = 0;
                     for (long k = s; k < n; ++k) total += (2 * k + 1) * C(k, s) * C(k + s, s);
                     return Q(total);
                   },
                   [](std::span<const long> a) -> ExactRational {
                     const long n = a[0], s = a[1];
                     return make_rational(n * C(n + s, 2 * s) * C(2 * s, s) * (n - s), s + 1);
                   }}}});

  cat.push_back({IdentityId::I4, "I4", "C(m-i,m-s)C(s,m-i) = C(s,i)C(i,m-s)", {"m", "i", "s"},
                 [](std::span<const long> a) { return a[1] <= a[0] && a[2] <= a[0]; },
                 {{"", [](std::span<const long> a) -> ExactRational {
                     const long m = a[0], i = a[1], s = a[2];
                     return Q(C(m - i, m - s) * C(s, m - i));
                   },
                   [](std::span<const long> a) -> ExactRational {
                     const long m = a[0], i = a[1], s = a[2];
                     return Q(C(s, i) * C(i, m - s));
                   }}}});

  cat.push_back({IdentityId::I5, "I5",
                 "sum_{s=i}^{m} (-1)^s/(s+1) C(s,i)C(i,m-s) = (-1)^m / ((m+1) C(m,i))",
                 {"i", "m"},
                 [](std::span<const long> a) { return a[0] <= a[1]; },
                 {{"", [](std::span<const long> a) -> ExactRational {
                     const long i = a[0], m = a[1];
                     ExactRational total = 0;
                     for (long s = i; s <= m; ++s) {
                       const long sign = s % 2 == 0 ? 1 : -1;
                       total += make_rational(sign * C(s, i) * C(i, m - s), s + 1);
                     }
                     return total;
                   },
                   [](std::span<const long> a) -> ExactRational {
                     const long i = a[0], m = a[1];
                     return make_rational(m % 2 == 0 ? 1 : -1, (m + 1) * C(m, i));
                   }}}});

  cat.push_back({IdentityId::I6, "I6",
                 "C(2n,n) 3/(2n-3) = C(2n,n)/(2n-1) + C(2n-2,n-1) 8/(2n-3)",
                 {"n"},
                 [](std::span<const long> a) { return a[0] >= 1; },
                 {{"", [](std::span<const long> a) -> ExactRational {
                     const long n = a[0];
                     return make_rational(3 * C(2 * n, n), 2 * n - 3);
                   },
                   [](std::span<const long> a) -> ExactRational {
                     const long n = a[0];
                     return make_rational(C(2 * n, n), 2 * n - 1) +
                            make_rational(8 * C(2 * n - 2, n - 1), 2 * n - 3);
                   }}}});

  cat.push_back({IdentityId::I7, "I7",
                 "sum_{k<n} (2k+1) R_k^2 = n sum_s C(n+s,2s)C(2s,s)(n-s)/(s+1) sum_{m,i} "
                 "C(m,i)C(s,i)C(i,m-s)/((2i-1)(2m-2i-1))",
                 {"n"},
                 [](std::span<const long> a) { return a[0] >= 1; },
                 {{"", [](std::span<const long> a) -> ExactRational {
                     return weighted_square_sum(SequenceId::R(), static_cast<unsigned>(a[0]));
                   },
                   [](std::span<const long> a) -> ExactRational { return collapsed_square_sum(a[0], 1, 1); }}}});

  cat.push_back({IdentityId::I8, "I8",
                 "9 sum_{k<n} (2k+1) W_k^2 = n sum_s C(n+s,2s)C(2s,s)(n-s)/(s+1) sum_{m,i} "
                 "81 C(m,i)C(s,i)C(i,m-s)/((2i-3)(2m-2i-3))",
                 {"n"},
                 [](std::span<const long> a) { return a[0] >= 1; },
                 {{"", [](std::span<const long> a) -> ExactRational {
                     return ExactRational(
                         9 * weighted_square_sum(SequenceId::W(), static_cast<unsigned>(a[0])));
                   },
                   [](std::span<const long> a) -> ExactRational { return collapsed_square_sum(a[0], 81, 3); }}}});

  cat.push_back({IdentityId::I9, "I9", "(2k-1) | C(2k,k) and (2k-3) | 3 C(2k,k)", {"k"}, any,
                 {{"(2k-1) | C(2k,k)",
                   [](std::span<const long> a) -> ExactRational {
                     return make_rational(C(2 * a[0], a[0]), 2 * a[0] - 1);
                   },
                   [](std::span<const long> a) -> ExactRational {
                     return truncated(make_rational(C(2 * a[0], a[0]), 2 * a[0] - 1));
                   }},
                  {"(2k-3) | 3 C(2k,k)",
                   [](std::span<const long> a) -> ExactRational {
                     return make_rational(3 * C(2 * a[0], a[0]), 2 * a[0] - 3);
                   },
                   [](std::span<const long> a) -> ExactRational {
                     return truncated(make_rational(3 * C(2 * a[0], a[0]), 2 * a[0] - 3));
                   }}}});
  return cat;
}

std::vector<std::pair<std::string, long long>> named_params(const IdentityEntry& e,
                                                            std::span<const long> params) {
  std::vector<std::pair<std::string, long long>> out;
  for (std::size_t j = 0; j < e.params.size(); ++j) out.emplace_back(e.params[j], params[j]);
  return out;
}

CheckReport evaluate(const IdentityEntry& e, std::span<const long> params) {
  Witness headline;
  for (std::size_t r = 0; r < e.relations.size(); ++r) {
    const auto& rel = e.relations[r];
    const ExactRational lhs = rel.lhs(params);
    const ExactRational rhs = rel.rhs(params);
    if (lhs != rhs) {
      std::string detail = "relation " + std::to_string(r + 1);
      if (!rel.label.empty()) detail += " (" + rel.label + ")";
      return CheckReport::fail(e.name, named_params(e, params), relation_witness(lhs, rhs),
                               std::move(detail));
    }
    if (r == 0) headline = relation_witness(lhs, rhs);
  }
  return CheckReport::pass(e.name, named_params(e, params), std::move(headline));
}

}  // namespace

const std::vector<IdentityEntry>& identity_catalog() {
  static const std::vector<IdentityEntry> cat = build_catalog();
  return cat;
}

const IdentityEntry& identity(IdentityId id) {
  return identity_catalog().at(static_cast<std::size_t>(id));
}

IdentityId parse_identity_id(std::string_view name) {
  for (const auto& e : identity_catalog()) {
    if (e.name == name) return e.id;
  }
  throw std::invalid_argument("unknown identity '" + std::string(name) +
                              "' (valid: I1 I2 I3 I4 I5 I6 I7 I8 I9)");
}

std::string to_string(IdentityId id) { return identity(id).name; }

CheckReport check_identity(IdentityId id, std::span<const long> params) {
  const auto& e = identity(id);
  if (params.size() != e.params.size()) {
    throw std::invalid_argument(e.name + " takes " + std::to_string(e.params.size()) +
                                " parameters");
  }
  for (long v : params) {
    if (v < 0) throw DomainError(e.name + ": parameters must be nonnegative");
  }
  if (!e.in_domain(params)) throw DomainError(e.name + ": parameters outside the domain");
  return timed([&] { return evaluate(e, params); });
}

SweepOutcome sweep_identity(IdentityId id, std::span<const long> bounds, unsigned workers) {
  const auto& e = identity(id);
  if (bounds.size() != e.params.size()) {
    throw std::invalid_argument(e.name + " takes " + std::to_string(e.params.size()) + " bounds");
  }
  for (long b : bounds) {
    if (b < 0) throw std::invalid_argument("sweep bounds must be >= 0");
  }
  SweepOutcome out{e.name, 0, {}};
  std::mutex mutex;
  parallel_for(static_cast<std::size_t>(bounds[0] + 1), workers, [&](std::size_t first) {
    std::vector<long> tuple(bounds.size(), 0);
    tuple[0] = static_cast<long>(first);
    std::size_t checked = 0;
    std::vector<CheckReport> failures;
    // Odometer over every coordinate except the first.
    auto advance = [&] {
      for (std::size_t j = tuple.size(); j-- > 1;) {
        if (tuple[j] < bounds[j]) {
          ++tuple[j];
          return true;
        }
        tuple[j] = 0;
      }
      return false;
    };
    do {
      if (e.in_domain(tuple)) {
        ++checked;
        CheckReport r = evaluate(e, tuple);
        if (!r.passed()) failures.push_back(std::move(r));
      }
    } while (advance());
    std::lock_guard lock(mutex);
    out.checked += checked;
    for (auto& f : failures) out.failures.push_back(std::move(f));
  });
  return out;
}

ExactRational collapsed_square_sum(long n, long weight, long shift) {
  if (n < 1) throw std::invalid_argument("collapsed_square_sum: n must be >= 1");
  ExactRational outer = 0;
  for (long s = 0; s < n; ++s) {
    SmallDenominatorSum inner;
    for (long m = s; m <= 2 * s; ++m) {
      for (long i = m - s; i <= s; ++i) {  // C(i, m-s) vanishes for i < m-s
        inner.add(weight * C(m, i) * C(s, i) * C(i, m - s), (2 * i - shift) * (2 * m - 2 * i - shift));
      }
    }
    outer += make_rational(C(n + s, 2 * s) * C(2 * s, s) * (n - s), s + 1) * inner.value();
  }
  return n * outer;
}

}  // namespace trisum
