// Catalog of the intermediate relations behind the two double-sum lemmas and
// the supercongruences. Naming of shared quantities (all at a fixed odd prime p,
// indices i, j running over 0..p-1, eps = (-1)^((p-1)/2)):
//
//   alt1        sum p(-1)^i/(2i-1)                 alt3   sum p(-1)^i/(2i-3)
//   tail        sum_{k=1}^{(p-3)/2} (-1)^k/k^2     alt_plus3  sum p^2(-1)^i/(2i+3)
//   dbl1, dbl3  the lemma double sums with c = 1, 3
//   half1       sum p^2(-1)^{i+j}/((2i-1)(i+j+1))   half1_sym: (i+j+1)(2j-1)
//   half3       sum p^2(-1)^{i+j}/((2i-3)(i+j+1))
//   shifted     sum p^2(-1)^{i+j}/((i+j+1)(2j+3))
//   cross       sum p^2(-1)^{i+j}/((2i-1)(2j+3))
//   edge_a, edge_b, edge_c   the three boundary sums left over when shifted
//                            is re-indexed back onto half1_sym
//   recip3      sum_{j=1}^{p-1} p^2(-1)^j/(3j)

#include <algorithm>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "congruences.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "sequences.hpp"

namespace trisum {

bool StepRelation::holds(unsigned long p) const {
  if (exact) return lhs == rhs;
  return valuation(ExactRational(lhs - rhs), p).at_least(power);
}

class StepContext {
 public:
  explicit StepContext(unsigned long p)
      : p_(static_cast<long>(p)), P_(static_cast<long>(p)), P2_(P_ * P_),
        eps_(((p - 1) / 2) % 2 == 0 ? 1 : -1) {}

  long p() const { return p_; }
  const BigInt& P() const { return P_; }
  const BigInt& P2() const { return P2_; }
  long eps() const { return eps_; }
  ExactRational Pq() const { return ExactRational(P_); }
  ExactRational P2q() const { return ExactRational(P2_); }
  ExactRational pe() const { return ExactRational(P_ * eps_); }

  static ExactRational q(long num, long den) { return make_rational(BigInt(num), BigInt(den)); }
  static long sgn(long i) { return i % 2 == 0 ? 1 : -1; }

  /// sum_{i=lo}^{hi} scale (-1)^i / den(i)
  ExactRational alt_single(long lo, long hi, const BigInt& scale,
                           const std::function<long long(long)>& den) const {
    SmallDenominatorSum acc;
    for (long i = lo; i <= hi; ++i) acc.add(i % 2 == 0 ? scale : BigInt(-scale), den(i));
    return acc.value();
  }

  /// sum over the box of scale (-1)^{i+j} / den(i, j), one shared denominator per row.
  ExactRational alt_double(long ilo, long ihi, long jlo, long jhi, const BigInt& scale,
                           const std::function<long long(long, long)>& den) const {
    ExactRational total = 0;
    for (long i = ilo; i <= ihi; ++i) {
      SmallDenominatorSum row;
      for (long j = jlo; j <= jhi; ++j) {
        row.add((i + j) % 2 == 0 ? scale : BigInt(-scale), den(i, j));
      }
      total += row.value();
    }
    return total;
  }

  ExactRational alt_double(const BigInt& scale,
                           const std::function<long long(long, long)>& den) const {
    return alt_double(0, p_ - 1, 0, p_ - 1, scale, den);
  }

  const ExactRational& alt1() {
    return memo(alt1_, [&] { return alt_single(0, p_ - 1, P_, [](long i) { return 2 * i - 1; }); });
  }
  const ExactRational& alt3() {
    return memo(alt3_, [&] { return alt_single(0, p_ - 1, P_, [](long i) { return 2 * i - 3; }); });
  }
  const ExactRational& alt_plus3() {
    return memo(alt_plus3_,
                [&] { return alt_single(0, p_ - 1, P2_, [](long i) { return 2 * i + 3; }); });
  }
  const ExactRational& tail() {
    return memo(tail_, [&] {
      return alt_single(1, (p_ - 3) / 2, BigInt(1), [](long k) { return static_cast<long long>(k) * k; });
    });
  }
  /// p^2 * tail
  ExactRational p2_tail() { return P2q() * tail(); }
  /// sum_{k=1}^{(p-3)/2} (-1)^{(p-1)/2+k} p^2/k^2
  ExactRational signed_tail() { return ExactRational(eps_ * P2q() * tail()); }

  const ExactRational& dbl1() { return memo(dbl1_, [&] { return alternating_double_sum(p_, 1); }); }
  const ExactRational& dbl3() { return memo(dbl3_, [&] { return alternating_double_sum(p_, 3); }); }
  const ExactRational& half1() {
    return memo(half1_, [&] {
      return alt_double(P2_, [](long i, long j) { return (2LL * i - 1) * (i + j + 1); });
    });
  }
  const ExactRational& half1_sym() {
    return memo(half1_sym_, [&] {
      return alt_double(P2_, [](long i, long j) { return (i + j + 1LL) * (2 * j - 1); });
    });
  }
  const ExactRational& half3() {
    return memo(half3_, [&] {
      return alt_double(P2_, [](long i, long j) { return (2LL * i - 3) * (i + j + 1); });
    });
  }
  const ExactRational& shifted() {
    return memo(shifted_, [&] {
      return alt_double(P2_, [](long i, long j) { return (i + j + 1LL) * (2 * j + 3); });
    });
  }
  const ExactRational& cross() {
    return memo(cross_, [&] {
      return alt_double(P2_, [](long i, long j) { return (2LL * i - 1) * (2 * j + 3); });
    });
  }
  const ExactRational& edge_a() {
    return memo(edge_a_, [&] {
      const long p = p_;
      ExactRational out = 0;
      out += alt_single(0, p - 1, P2_, [](long j) { return (j + 1LL) * (2 * j + 3); });
      out -= alt_single(0, p - 1, P2_, [](long j) { return (j + 2LL) * (2 * j + 3); });
      out += alt_single(0, p - 1, P2_, [p](long j) { return (j + p + 1LL) * (2 * j + 3); });
      out -= alt_single(0, p - 1, P2_, [p](long j) { return (j + p + 2LL) * (2 * j + 3); });
      return out;
    });
  }
  const ExactRational& edge_b() {
    return memo(edge_b_, [&] {
      return ExactRational(alt_single(0, p_ - 1, P2_, [](long i) { return i + 1; }) +
                           alt_single(0, p_ - 1, P2_, [](long i) { return i + 2; }));
    });
  }
  const ExactRational& edge_c() {
    return memo(edge_c_, [&] {
      const long p = p_;
      return ExactRational(
          -alt_single(0, p - 1, P2_, [p](long i) { return (i + p + 1LL) * (2 * p - 1); }) +
          alt_single(0, p - 1, P2_, [p](long i) { return (i + p + 2LL) * (2 * p + 1); }));
    });
  }
  const ExactRational& recip3() {
    return memo(recip3_, [&] { return alt_single(1, p_ - 1, P2_, [](long j) { return 3 * j; }); });
  }
  const BigInt& central() {
    if (!central_) central_ = binomial(p_ - 1, (p_ - 1) / 2);
    return *central_;
  }
  const ExactRational& square_sum_R() {
    return memo(square_sum_R_,
                [&] { return weighted_square_sum(SequenceId::R(), static_cast<unsigned>(p_)); });
  }
  const ExactRational& square_sum_W() {
    return memo(square_sum_W_,
                [&] { return weighted_square_sum(SequenceId::W(), static_cast<unsigned>(p_)); });
  }

  /// v_p(C(a, b)) by Legendre; only for 0 <= b <= a.
  long binomial_ord(long a, long b) const {
    const auto up = static_cast<unsigned long>(p_);
    return static_cast<long>(ord_factorial(up, a)) - static_cast<long>(ord_factorial(up, b)) -
           static_cast<long>(ord_factorial(up, a - b));
  }
  long small_ord(long x) const {
    if (x == 0) throw std::logic_error("small_ord(0)");
    long v = 0;
    for (x = x < 0 ? -x : x; x % p_ == 0; x /= p_) ++v;
    return v;
  }

 private:
  template <typename Fn>
  const ExactRational& memo(std::optional<ExactRational>& slot, Fn&& fn) {
    if (!slot) slot = fn();
    return *slot;
  }

  long p_;
  BigInt P_, P2_;
  long eps_;
  std::optional<ExactRational> alt1_, alt3_, alt_plus3_, tail_, dbl1_, dbl3_, half1_, half1_sym_,
      half3_, shifted_, cross_, edge_a_, edge_b_, edge_c_, recip3_, square_sum_R_, square_sum_W_;
  std::optional<BigInt> central_;
};

namespace {

using Q = ExactRational;
using Rel = StepRelation;
using Rels = std::vector<StepRelation>;

Q q(long a, long b) { return StepContext::q(a, b); }

Rel exact(std::string label, Q lhs, Q rhs) {
  return {std::move(label), std::move(lhs), std::move(rhs), true, 0};
}
Rel mod(std::string label, Q lhs, Q rhs, int power = 3) {
  return {std::move(label), std::move(lhs), std::move(rhs), false, power};
}

// --- S1 .. S13: the c = 1 lemma --------------------------------------------

Rels s1(StepContext& c) {
  const Q split = c.alt_double(c.P2(), [](long i, long j) { return 2LL * (2 * i - 1) * (2 * j - 1); }) -
                  c.alt_double(c.P2(), [](long i, long j) { return 4LL * (2 * i - 1) * (i + j + 1); }) -
                  c.alt_double(c.P2(), [](long i, long j) { return 4LL * (2 * j - 1) * (i + j + 1); });
  return {exact("double sum = alt1^2/2 - half1/2", c.dbl1(), Q(c.alt1() * c.alt1() / 2 - c.half1() / 2)),
          exact("partial fractions", c.dbl1(), split)};
}

Rels s2(StepContext& c) {
  const Q rhs = Q(-2 * c.P() - c.eps()) + c.signed_tail() / 2;
  return {mod("alt1 expansion", c.alt1(), rhs)};
}

Rels s3(StepContext& c) {
  const Q rhs = Q(1 + 4 * c.P() * c.eps() + 4 * c.P2()) - c.p2_tail();
  return {mod("alt1 squared", Q(c.alt1() * c.alt1()), rhs)};
}

Rels s4(StepContext& c) {
  const Q rhs = Q(1 - 4 * c.P() * c.eps() - 2 * c.P2()) - c.p2_tail();
  const Q rhs12 = Q(-4 * c.P2() + 8 * c.P() * c.eps());
  const Q rhs13 = Q(2 - 8 * c.P2()) - 2 * c.p2_tail();
  return {mod("half1 reduced target", c.half1(), rhs),
          exact("symmetry in i and j", c.half1(), c.half1_sym()),
          mod("S12 and S13 combined", Q(2 * c.half1_sym()), Q(rhs13 - rhs12))};
}

Rels s5(StepContext& c) {
  return {exact("half1 = 2 cross - shifted", c.half1(), Q(2 * c.cross() - c.shifted()))};
}

Rels s6(StepContext& c) {
  const Q alt1 = c.alt1();
  const Q p_alt1 = c.Pq() * alt1;  // sum p^2(-1)^i/(2i-1)
  const Q p = c.Pq();
  const Q reindexed = c.alt_double(0, c.p() - 1, 2, c.p() + 1, c.P2(),
                                   [](long i, long j) { return (2LL * i - 1) * (2 * j - 1); });
  const Q line3 = alt1 * alt1 + p_alt1 * (2 - Q(1) / (2 * p - 1) + Q(1) / (2 * p + 1));
  const Q line4 = alt1 * alt1 + p_alt1 * (2 - Q(2) / (4 * p * p - 1));
  return {mod("cross", c.cross(), Q(1 - 4 * c.P2()) - c.p2_tail()),
          exact("re-indexed j", c.cross(), reindexed),
          exact("boundary terms split off", c.cross(), line3),
          exact("boundary terms combined", c.cross(), line4),
          mod("cross ~ alt1^2 + 4 sum", c.cross(), Q(alt1 * alt1 + 4 * p_alt1))};
}

Rels s7(StepContext& c) {
  const Q reindexed = c.alt_double(-2, c.p() - 3, 2, c.p() + 1, c.P2(),
                                   [](long i, long j) { return (i + j + 1LL) * (2 * j - 1); });
  return {exact("shifted = half1_sym + boundary", c.shifted(),
                Q(c.half1_sym() + c.edge_a() + c.edge_b() + c.edge_c())),
          exact("re-indexed", c.shifted(), reindexed)};
}

Rels s8(StepContext& c) {
  const Q p = c.Pq();
  return {mod("boundary sum b", c.edge_b(), Q(2 * c.P2())),
          exact("closed form", c.edge_b(), Q(p * p + p * p / (p + 1)))};
}

Rels s9(StepContext& c) {
  const Q p = c.Pq();
  const long pl = c.p();
  const Q mid = -p / (4 * p - 2) - p / (4 * p + 2) + p * p +
                c.alt_single(0, pl - 2, c.P2(), [](long i) { return i + 1; }) +
                c.alt_single(0, pl - 3, c.P2(), [](long i) { return i + 2; });
  return {mod("boundary sum c", c.edge_c(), Q(4 * c.P2())),
          mod("telescoped", c.edge_c(), mid),
          exact("telescoped closed form", mid, Q(-2 * p * p / (4 * p * p - 1) + 2 * p * p))};
}

Rels s10(StepContext& c) {
  const Q p = c.Pq();
  return {mod("alt_plus3", c.alt_plus3(), Q(2 * p * p - c.pe())),
          exact("shift to 2i-1", c.alt_plus3(),
                Q(2 * p * p + p * p / (2 * p + 1) - p * p / (2 * p - 1) + p * c.alt1()))};
}

Rels s11(StepContext& c) {
  const Q p = c.Pq();
  const long pl = c.p();
  const BigInt& P2 = c.P2();
  auto sum = [&](const std::function<long long(long)>& den) {
    return c.alt_single(0, pl - 1, P2, den);
  };
  const Q by_i1 = sum([](long j) { return j + 1; });
  const Q by_i2 = sum([](long j) { return j + 2; });
  const Q by_p1 = sum([pl](long j) { return j + pl + 1; });
  const Q by_p2 = sum([pl](long j) { return j + pl + 2; });
  const Q t = c.alt_plus3();
  const Q first = by_i1 - 4 * t + by_i2 + (2 * t - by_p1) / (2 * p - 1) + (by_p2 - 2 * t) / (2 * p + 1);
  const Q second = c.edge_b() + (-4 + Q(2) / (2 * p - 1) - Q(2) / (2 * p + 1)) * t +
                   c.alt_single(0, pl - 1, P2, [pl](long j) { return (2LL * pl + 1) * (j + pl + 2); }) -
                   c.alt_single(0, pl - 1, P2, [pl](long j) { return (2LL * pl - 1) * (j + pl + 1); });
  const Q third = 2 * p * p + (-4 + Q(4) / (4 * p * p - 1)) * (2 * p * p - c.pe()) + 4 * p * p;
  return {mod("boundary sum a", c.edge_a(), Q(-10 * c.P2() + 8 * c.P() * c.eps())),
          exact("partial fractions", c.edge_a(), first),
          exact("regrouped", c.edge_a(), second),
          mod("substituted", c.edge_a(), third)};
}

Rels s12(StepContext& c) {
  return {mod("shifted vs half1_sym", c.shifted(),
              Q(c.half1_sym() - 4 * c.P2() + 8 * c.P() * c.eps()))};
}

Rels s13(StepContext& c) {
  return {mod("shifted + half1_sym", Q(c.shifted() + c.half1_sym()),
              Q(2 - 8 * c.P2()) - 2 * c.p2_tail())};
}

// --- S14 .. S19: the c = 3 lemma (p > 3) -----------------------------------

Rels s14(StepContext& c) {
  return {exact("double sum = alt3^2/4 - half3/4", c.dbl3(),
                Q(c.alt3() * c.alt3() / 4 - c.half3() / 4))};
}

Rels s15(StepContext& c) {
  const Q p = c.Pq();
  const Q rhs = 5 * p / 3 + p / (2 * p - 3) + c.eps() - c.signed_tail() / 2;
  return {mod("alt3 expansion", c.alt3(), rhs),
          exact("alt3 via alt1", c.alt3(), Q(-p / 3 + p / (2 * p - 3) - c.alt1()))};
}

Rels s16(StepContext& c) {
  const Q p = c.Pq();
  const Q pe = c.pe();
  const Q rhs = 1 + 16 * p * p / 9 + 10 * pe / 3 + 2 * pe / (2 * p - 3) - c.p2_tail();
  return {mod("alt3 squared", Q(c.alt3() * c.alt3()), rhs)};
}

Rels s17(StepContext& c) {
  const Q p = c.Pq();
  const Q pe = c.pe();
  const long pl = c.p();
  const BigInt& P2 = c.P2();
  const Q a1 = c.alt_single(0, pl - 1, P2, [pl](long j) { return (2LL * pl - 3) * (j + pl); });
  const Q b1 = c.alt_single(1, pl - 1, P2, [](long i) { return static_cast<long long>(i) * (2 * i - 3); });
  const Q c1 = c.alt_single(0, pl - 1, P2, [](long i) { return (2LL * i - 3); });
  const Q c1_den = c.alt_single(0, pl - 1, P2, [pl](long i) { return (2LL * i - 3) * (i + pl); });
  const Q b_from1 = c.alt_single(1, pl - 1, P2, [](long i) { return 2LL * i - 3; });
  const Q by_ip = c.alt_single(0, pl - 1, P2, [pl](long i) { return i + pl; });
  return {mod("sum over (2p-3)(j+p)", a1, Q(-c.recip3() + p / (2 * p - 3))),
          exact("sum over i(2i-3), partial fractions", b1, Q(q(2, 3) * b_from1 - c.recip3())),
          mod("sum over i(2i-3)", b1, Q(10 * p * p / 9 + 2 * pe / 3 - c.recip3())),
          exact("sum over (2i-3)(i+p), partial fractions", c1_den,
                Q(2 / (2 * p + 3) * c1 - by_ip / (2 * p + 3))),
          mod("sum over (2i-3)(i+p)", c1_den,
              Q(8 * p * p / 9 + 2 * pe / (2 * p + 3) - p / (2 * p + 3) - c.recip3()))};
}

Rels s18(StepContext& c) {
  const Q p = c.Pq();
  const Q pe = c.pe();
  const long pl = c.p();
  const BigInt& P2 = c.P2();
  // Exact split of half3 onto half1. The i(2i-3) sum starts at i = 1 and
  // the (2p-3)(j+p) sum at j = 0; other index ranges do not balance.
  const Q split = c.half1() + c.recip3() -
                  c.alt_single(0, pl - 1, P2, [pl](long j) { return (2LL * pl - 3) * (j + pl); }) +
                  c.alt_single(1, pl - 1, P2, [](long i) { return static_cast<long long>(i) * (2 * i - 3); }) +
                  c.alt_single(0, pl - 1, P2, [pl](long i) { return (2LL * i - 3) * (i + pl); });
  return {mod("half3", c.half3(),
              Q(1 + 4 * p * p / 9 + 2 * pe / (2 * p + 3) - 10 * pe / 3 - c.p2_tail())),
          exact("split onto half1", c.half3(), split),
          mod("auxiliary sums substituted", c.half3(),
              Q(c.half1() + 2 * p * p + 2 * pe / 3 + 2 * pe / (2 * p + 3) - 4 * p * p / (4 * p * p - 9)))};
}

Rels s19(StepContext& c) {
  const Q p = c.Pq();
  return {mod("p/(2p-3) - p/(2p+3)", Q(p / (2 * p - 3) - p / (2 * p + 3)), Q(-2 * p / 3))};
}

// --- S20, S21: the tails of the two theorems ---------------------------------

Rels s20(StepContext& c) {
  const Q p = c.Pq();
  const long h = (c.p() + 1) / 2;
  const Q cc = Q(c.central() * c.central());
  const Q printed = 4 * (p - 2) * p * p / ((p + 2) * (p - 1) * (p - 1)) * cc;
  const Q exact_tail = 4 * (p - 2) * p * p / ((p + 2) * (p + 1) * (p + 1)) * cc;
  const BigInt top = binomial(c.p() + 1, h);
  const Q exceptional = Q(top * binomial(c.p(), h)) / 2 - Q(top * top) / (p + 2);
  return {mod("tail", printed, Q(-4 * c.P2())),
          exact("exceptional terms, closed form with (p+1)^2", exceptional, exact_tail),
          mod("square sum = double sum + tail", c.square_sum_R(), Q(c.dbl1() + printed))};
}

Rels s21(StepContext& c) {
  const Q p = c.Pq();
  const long pl = c.p();
  const long h = (pl + 3) / 2;
  const Q cc = Q(c.central() * c.central());
  const BigInt poly = BigInt(pl) * pl * pl * pl * pl - 5 * BigInt(pl) * pl * pl * pl -
                      3 * BigInt(pl) * pl * pl + 41 * BigInt(pl) * pl - 10 * pl - 120;
  const Q tail = Q(2 * c.P2() * poly) / (3 * (p + 1) * (p + 1) * (p + 3) * (p + 3) * (p + 4)) * cc;
  const BigInt top = binomial(pl + 3, h);
  const Q exceptional = (p + 3) * (p - 1) / 48 * Q(top * binomial(pl, h)) -
                        (p + 3) * (p + 1) / (8 * (p + 2)) * Q(top * binomial(pl + 1, h)) +
                        Q(top * binomial(pl + 2, h)) / 2 - Q(top * top) / (p + 4);
  return {mod("tail", tail, Q(-20 * p * p / 9)),
          exact("exceptional terms, closed form", exceptional, tail),
          mod("square sum / 9 = double sum + tail", Q(c.square_sum_W() / 9), Q(c.dbl3() + tail))};
}

// --- S22 .. S24: p-integrality and the exceptional terms ---------------------

Q row_weight(long p, long s) {
  return Q(binomial(p + s, 2 * s) * binomial(2 * s, s) * (p - s)) / (s + 1);
}

Rels s22(StepContext& c) {
  const long p = c.p();
  Rels out;
  out.push_back(mod("row weight at s = p-1", row_weight(p, p - 1), Q(StepContext::sgn(p - 1)), 2));
  for (long s = 0; s <= p - 2; ++s) {
    const Q w = row_weight(p, s);
    const std::string at = " at s=" + std::to_string(s);
    Q prod = q(p, s + 1);
    for (long i = 1; i <= s; ++i) prod *= q(p * p - i * i, i * i);
    out.push_back(mod("row weight" + at, w, q(p * StepContext::sgn(s), s + 1)));
    out.push_back(exact("binomial form" + at, w, Q(binomial(p - 1, s) * binomial(p + s, s) * p) / (s + 1)));
    out.push_back(exact("product form" + at, w, prod));
  }
  // Termwise p-integrality of p C(m,i)C(s,i)C(i,m-s)/((2i-1)(2m-2i-1)), s <= p-1.
  long worst = 1L << 30;
  long ws = 0, wm = 0, wi = 0;
  for (long s = 0; s <= p - 1; ++s) {
    for (long m = s; m <= 2 * s; ++m) {
      for (long i = m - s; i <= s; ++i) {
        const long v = 1 + c.binomial_ord(m, i) + c.binomial_ord(s, i) + c.binomial_ord(i, m - s) -
                       c.small_ord(2 * i - 1) - c.small_ord(2 * m - 2 * i - 1);
        if (v < worst) {
          worst = v;
          ws = s;
          wm = m;
          wi = i;
        }
      }
    }
  }
  const Q worst_term = Q(binomial(wm, wi) * binomial(ws, wi) * binomial(wi, wm - ws) * p) /
                       ((2 * wi - 1) * (2 * wm - 2 * wi - 1));
  out.push_back(mod("least p-adic order of a term (s=" + std::to_string(ws) + ", m=" +
                        std::to_string(wm) + ", i=" + std::to_string(wi) + ")",
                    worst_term, Q(0), 0));
  // The last row taken as a whole is divisible by p.
  SmallDenominatorSum last;
  const long s = p - 1;
  for (long m = s; m <= 2 * s; ++m) {
    for (long i = m - s; i <= s; ++i) {
      last.add(binomial(m, i) * binomial(s, i) * binomial(i, m - s) * p,
               static_cast<long long>(2 * i - 1) * (2 * m - 2 * i - 1));
    }
  }
  out.push_back(mod("row s = p-1 summed", last.value(), Q(0), 1));
  // What the block is used for: the square sum collapses mod p^3.
  ExactRational assembled = 0;
  for (long t = 0; t <= p - 1; ++t) {
    SmallDenominatorSum inner;
    for (long m = t; m <= 2 * t; ++m) {
      for (long i = m - t; i <= t; ++i) {
        inner.add(binomial(m, i) * binomial(t, i) * binomial(i, m - t) * p,
                  static_cast<long long>(2 * i - 1) * (2 * m - 2 * i - 1));
      }
    }
    assembled += q(p * StepContext::sgn(t), t + 1) * inner.value();
  }
  out.push_back(mod("square sum collapsed", c.square_sum_R(), assembled));
  return out;
}

Q exceptional_term(long p, long m, long i, long s, long shift) {
  return Q(binomial(m, i) * binomial(s, i) * binomial(i, m - s) * p * p * StepContext::sgn(s)) /
         ((s + 1) * (2 * i - shift) * (2 * m - 2 * i - shift));
}

/// Smallest-order term among those the case analysis says vanish mod p^3,
/// skipping the listed exceptions.
Rel rest_vanishes(StepContext& c, long shift, long except_m, long except_i) {
  const long p = c.p();
  long worst = 1L << 30;
  long wm = -1, wi = -1, ws = -1;
  for (long m = p; m <= 2 * p - 2; ++m) {
    for (long i = m - p + 1; i <= p - 1; ++i) {
      if (m == except_m && i == except_i) continue;
      for (long s = std::max(p, i); s <= m; ++s) {
        if (m - s > i) continue;  // C(i, m-s) = 0
        const long v = 2 - c.small_ord(s + 1) + c.binomial_ord(m, i) + c.binomial_ord(s, i) +
                       c.binomial_ord(i, m - s) - c.small_ord(2 * i - shift) -
                       c.small_ord(2 * m - 2 * i - shift);
        if (v < worst) {
          worst = v;
          wm = m;
          wi = i;
          ws = s;
        }
      }
    }
  }
  if (wm < 0) return mod("no other terms", Q(0), Q(0));
  return mod("least-order other term (m=" + std::to_string(wm) + ", i=" + std::to_string(wi) +
                 ", s=" + std::to_string(ws) + ")",
             exceptional_term(p, wm, wi, ws, shift), Q(0));
}

Rels s23(StepContext& c) {
  const long p = c.p();
  const long h = (p + 1) / 2;
  const BigInt top = binomial(p + 1, h);
  return {exact("s = p", exceptional_term(p, p + 1, h, p, 1), Q(-top * binomial(p, h)) / 2),
          exact("s = p+1", exceptional_term(p, p + 1, h, p + 1, 1), Q(top * top) / (p + 2)),
          rest_vanishes(c, 1, p + 1, h)};
}

Rels s24(StepContext& c) {
  const long p = c.p();
  const long h = (p + 3) / 2;
  const BigInt top = binomial(p + 3, h);
  const Q pq = c.Pq();
  return {exact("s = p", exceptional_term(p, p + 3, h, p, 3),
                -(pq + 3) * (pq - 1) / 48 * Q(top * binomial(p, h))),
          exact("s = p+1", exceptional_term(p, p + 3, h, p + 1, 3),
                (pq + 3) * (pq + 1) / (8 * (pq + 2)) * Q(top * binomial(p + 1, h))),
          exact("s = p+2", exceptional_term(p, p + 3, h, p + 2, 3), Q(-top * binomial(p + 2, h)) / 2),
          exact("s = p+3", exceptional_term(p, p + 3, h, p + 3, 3), Q(top * top) / (pq + 4)),
          rest_vanishes(c, 3, p + 3, h)};
}

std::vector<StepEntry> build_steps() {
  std::vector<StepEntry> cat;
  auto add = [&](StepId id, std::string summary, bool exact_main, bool above3,
                 Rels (*fn)(StepContext&)) {
    cat.push_back({id, "S" + std::to_string(static_cast<int>(id) + 1), std::move(summary), exact_main,
                   above3, fn});
  };
  add(StepId::S1, "dbl1 = alt1^2/2 - half1/2", true, false, s1);
  add(StepId::S2, "alt1 == -2p + (-1)^((p+1)/2) + signed tail / 2", false, false, s2);
  add(StepId::S3, "alt1^2 == 1 + 4p eps + 4p^2 - p^2 tail", false, false, s3);
  add(StepId::S4, "half1 == 1 - 4p eps - 2p^2 - p^2 tail", false, false, s4);
  add(StepId::S5, "half1 = 2 cross - shifted", true, false, s5);
  add(StepId::S6, "cross == 1 - 4p^2 - p^2 tail", false, false, s6);
  add(StepId::S7, "shifted = half1_sym + edge_a + edge_b + edge_c", true, false, s7);
  add(StepId::S8, "edge_b == 2p^2", false, false, s8);
  add(StepId::S9, "edge_c == 4p^2", false, false, s9);
  add(StepId::S10, "sum p^2(-1)^i/(2i+3) == 2p^2 - p eps", false, false, s10);
  add(StepId::S11, "edge_a == -10p^2 + 8p eps", false, false, s11);
  add(StepId::S12, "shifted == half1_sym - 4p^2 + 8p eps", false, false, s12);
  add(StepId::S13, "shifted + half1_sym == 2 - 8p^2 - 2p^2 tail", false, false, s13);
  add(StepId::S14, "dbl3 = alt3^2/4 - half3/4", true, true, s14);
  add(StepId::S15, "alt3 == 5p/3 + p/(2p-3) + eps - signed tail / 2", false, true, s15);
  add(StepId::S16, "alt3^2 == 1 + 16p^2/9 + 10p eps/3 + 2p eps/(2p-3) - p^2 tail", false, true, s16);
  add(StepId::S17, "three auxiliary sums over (2p-3)(j+p), i(2i-3), (2i-3)(i+p)", false, true, s17);
  add(StepId::S18, "half3 == 1 + 4p^2/9 + 2p eps/(2p+3) - 10p eps/3 - p^2 tail", false, true, s18);
  add(StepId::S19, "p/(2p-3) - p/(2p+3) == -2p/3", false, true, s19);
  add(StepId::S20, "4(p-2)p^2/((p+2)(p-1)^2) C(p-1,(p-1)/2)^2 == -4p^2", false, false, s20);
  add(StepId::S21, "2p^2(p^5-5p^4-3p^3+41p^2-10p-120)/(3(p+1)^2(p+3)^2(p+4)) C^2 == -20p^2/9",
      false, true, s21);
  add(StepId::S22, "row weights C(p+s,2s)C(2s,s)(p-s)/(s+1) and p-integrality", false, false, s22);
  add(StepId::S23, "exceptional terms at m=p+1, i=(p+1)/2", false, false, s23);
  add(StepId::S24, "exceptional terms at m=p+3, i=(p+3)/2", false, true, s24);
  return cat;
}

CheckReport evaluate_step(const StepEntry& e, StepContext& ctx) {
  const unsigned long p = static_cast<unsigned long>(ctx.p());
  const std::vector<std::pair<std::string, long long>> params = {{"p", ctx.p()}};
  const Rels rels = e.relations(ctx);
  for (std::size_t r = 0; r < rels.size(); ++r) {
    if (rels[r].holds(p)) continue;
    Witness w = relation_witness(rels[r].lhs, rels[r].rhs, p);
    w.extra.emplace_back("relation", std::to_string(r + 1));
    w.extra.emplace_back("relation_kind", rels[r].exact ? "exact" : "mod p^" + std::to_string(rels[r].power));
    return CheckReport::fail(e.name, params, std::move(w),
                             "relation " + std::to_string(r + 1) + " (" + rels[r].label + ")");
  }
  Witness w = relation_witness(rels.front().lhs, rels.front().rhs, p);
  w.extra.emplace_back("relations", std::to_string(rels.size()));
  return CheckReport::pass(e.name, params, std::move(w));
}

}  // namespace

const std::vector<StepEntry>& step_catalog() {
  static const std::vector<StepEntry> cat = build_steps();
  return cat;
}

const StepEntry& step(StepId id) { return step_catalog().at(static_cast<std::size_t>(id)); }

StepId parse_step_id(std::string_view name) {
  for (const auto& e : step_catalog()) {
    if (e.name == name) return e.id;
  }
  std::string valid;
  for (const auto& e : step_catalog()) valid += (valid.empty() ? "" : " ") + e.name;
  throw std::invalid_argument("unknown step '" + std::string(name) + "' (valid: " + valid + ")");
}

bool step_in_domain(StepId id, unsigned long p) {
  if (p < 3 || !is_prime(p)) return false;
  return !step(id).needs_p_above_3 || p > 3;
}

CheckReport verify_proof_step(StepId id, unsigned long p) {
  const auto& e = step(id);
  if (!step_in_domain(id, p)) {
    throw DomainError(e.name + ": p must be " +
                      (e.needs_p_above_3 ? "a prime > 3" : "an odd prime"));
  }
  StepContext ctx(p);
  return timed([&] { return evaluate_step(e, ctx); });
}

SweepOutcome sweep_proof_steps(std::span<const StepId> steps, std::span<const unsigned long> primes,
                               unsigned workers) {
  SweepOutcome out{"steps", 0, {}};
  std::mutex mutex;
  parallel_for(primes.size(), workers, [&](std::size_t k) {
    // Largest primes first.
    const unsigned long p = primes[primes.size() - 1 - k];
    StepContext ctx(p);
    std::size_t checked = 0;
    std::vector<CheckReport> failures;
    for (StepId id : steps) {
      if (!step_in_domain(id, p)) continue;
      ++checked;
      CheckReport r = evaluate_step(step(id), ctx);
      if (!r.passed()) failures.push_back(std::move(r));
    }
    std::lock_guard lock(mutex);
    out.checked += checked;
    for (auto& f : failures) out.failures.push_back(std::move(f));
  });
  return out;
}

}  // namespace trisum
