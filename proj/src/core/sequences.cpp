#include "sequences.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "errors.hpp"
#include "parallel.hpp"

namespace trisum {

namespace {

// Walks t_k = C(n+k,2k) C(2k,k) for k = 0..n via
// t_{k+1} = t_k (n+k+1)(n-k) / (k+1)^2, which is an exact division.
template <typename Fn>
void for_each_central_weight(unsigned n, Fn&& fn) {
  BigInt t = 1;
  for (unsigned k = 0;; ++k) {
    fn(k, t);
    if (k == n) break;
    t *= static_cast<unsigned long>(n + k + 1);
    t *= static_cast<unsigned long>(n - k);
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(),
                    static_cast<unsigned long>(k + 1) * (k + 1));
  }
}

// C(2n,n) sum_{m,k} weight * C(n,k) C(m,k) C(k,m-n) / ((2k-shift)(2m-2k-shift)).
// C(k, m-n) vanishes unless m - n <= k, which bounds the inner loop.
BigInt binomial_double_sum(unsigned n, long weight, long shift, std::string_view what) {
  BigInt s1, s2, s3, s4;
  const long ln = n;
  const BigInt& central = binomial_into(2 * ln, ln, s1);
  MostlyIntegralSum acc;
  BigInt base, term;
  for (long k = 0; k <= ln; ++k) {
    base = central * binomial_into(ln, k, s2);
    base *= weight;
    for (long m = ln; m <= ln + k; ++m) {
      term = binomial_into(m, k, s3) * binomial_into(k, m - ln, s4);
      term *= base;
      acc.add(term, (2 * k - shift) * (2 * (m - k) - shift));
    }
  }
  return to_integer(acc.value(), what);
}

class DoubleSumMemo {
 public:
  template <typename Compute>
  BigInt get(unsigned n, Compute&& compute) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = values_.find(n); it != values_.end()) return it->second;
    }
    BigInt v = compute(n);
    std::lock_guard lock(mutex_);
    return values_.emplace(n, std::move(v)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<unsigned, BigInt> values_;
};

DoubleSumMemo& x_memo() {
  static DoubleSumMemo memo;
  return memo;
}

DoubleSumMemo& z_memo() {
  static DoubleSumMemo memo;
  return memo;
}

}  // namespace

SequenceId SequenceId::parse(std::string_view name, unsigned r) {
  if (name == "R") return R();
  if (name == "W") return W();
  if (name == "Rg") return RGeneral(r);
  if (name == "X") return X();
  if (name == "Z") return Z();
  throw std::invalid_argument("unknown sequence '" + std::string(name) +
                              "' (expected one of R, W, Rg, X, Z)");
}

std::string SequenceId::name() const {
  switch (kind) {
    case SequenceKind::R: return "R";
    case SequenceKind::W: return "W";
    case SequenceKind::RGeneral: return "Rg";
    case SequenceKind::X: return "X";
    case SequenceKind::Z: return "Z";
  }
  return "?";
}

BigInt central_weight(unsigned n, unsigned k) {
  if (k > n) return 0;
  return binomial(n + k, 2 * k) * binomial(2 * k, k);
}

BigInt eval_R(unsigned n) {
  MostlyIntegralSum acc;
  for_each_central_weight(n, [&](unsigned k, const BigInt& t) {
    acc.add(t, 2 * static_cast<long long>(k) - 1);
  });
  return to_integer(acc.value(), "R_" + std::to_string(n));
}

BigInt eval_W(unsigned n) {
  MostlyIntegralSum acc;
  BigInt scaled;
  for_each_central_weight(n, [&](unsigned k, const BigInt& t) {
    scaled = 3 * t;
    acc.add(scaled, 2 * static_cast<long long>(k) - 3);
  });
  return to_integer(acc.value(), "W_" + std::to_string(n));
}

ExactRational eval_R_general(unsigned n, unsigned r) {
  SmallDenominatorSum acc;
  for_each_central_weight(n, [&](unsigned k, const BigInt& t) {
    acc.add(t, 2 * static_cast<long long>(k) - 2 * static_cast<long long>(r) - 1);
  });
  return acc.value();
}

BigInt eval_X(unsigned n) {
  return x_memo().get(n, [](unsigned m) {
    return binomial_double_sum(m, 1, 1, "X_" + std::to_string(m));
  });
}

BigInt eval_Z(unsigned n) {
  return z_memo().get(n, [](unsigned m) {
    return binomial_double_sum(m, 81, 3, "Z_" + std::to_string(m));
  });
}

BigInt eval_Y(unsigned n) {
  const BigInt z = eval_Z(n);
  if (mpz_divisible_ui_p(z.get_mpz_t(), 9) == 0) {
    throw ArithmeticError("Z_" + std::to_string(n) + " is not divisible by 9");
  }
  BigInt y;
  mpz_divexact_ui(y.get_mpz_t(), z.get_mpz_t(), 9);
  return y;
}

ExactRational eval(SequenceId id, unsigned n) {
  switch (id.kind) {
    case SequenceKind::R: return ExactRational(eval_R(n));
    case SequenceKind::W: return ExactRational(eval_W(n));
    case SequenceKind::RGeneral: return eval_R_general(n, id.r);
    case SequenceKind::X: return ExactRational(eval_X(n));
    case SequenceKind::Z: return ExactRational(eval_Z(n));
  }
  throw std::logic_error("eval: unhandled sequence kind");
}

std::vector<ExactRational> eval_prefix(SequenceId id, unsigned count, unsigned workers) {
  std::vector<ExactRational> out(count);
  // Larger n dominate the cost of the double sums; hand them out first.
  parallel_for(count, workers, [&](std::size_t i) {
    const unsigned n = count - 1 - static_cast<unsigned>(i);
    out[n] = eval(id, n);
  });
  return out;
}

ExactRational weighted_square_sum(SequenceId id, unsigned n) {
  if (n == 0) throw std::invalid_argument("weighted_square_sum: n must be >= 1");
  ExactRational total = 0;
  for (unsigned k = 0; k < n; ++k) {
    const ExactRational v = eval(id, k);
    total += (2 * k + 1) * v * v;
  }
  return total;
}

std::vector<ExactRational> weighted_square_prefix(SequenceId id, unsigned max_n, unsigned workers) {
  const auto values = eval_prefix(id, max_n, workers);
  std::vector<ExactRational> sums(max_n + 1);
  sums[0] = 0;
  for (unsigned k = 0; k < max_n; ++k) {
    sums[k + 1] = sums[k] + (2 * k + 1) * values[k] * values[k];
  }
  return sums;
}

}  // namespace trisum
