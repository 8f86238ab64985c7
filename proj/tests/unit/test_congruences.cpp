#include <gtest/gtest.h>

#include <vector>

#include "congruences.hpp"
#include "errors.hpp"
#include "sequences.hpp"
#include "support/oracle.hpp"

using namespace trisum;
using trisum::testing::oracle;

namespace {

std::string extra(const CheckReport& r, const std::string& key) {
  for (const auto& [k, v] : r.witness.extra) {
    if (k == key) return v;
  }
  return "";
}

}  // namespace

TEST(Divisibility, SmallCases) {
  for (unsigned n : {1u, 3u, 5u}) EXPECT_TRUE(check_divisibility_R(n).passed()) << n;
  for (unsigned n : {1u, 2u, 3u}) EXPECT_TRUE(check_divisibility_W(n).passed()) << n;
  EXPECT_THROW(check_divisibility_R(0), DomainError);
  EXPECT_TRUE(sweep_divisibility_R(150, 2).passed());
  EXPECT_TRUE(sweep_divisibility_W(150, 2).passed());
}

TEST(Supercongruence, HandWitnesses) {
  const CheckReport r3 = check_supercongruence_R(3);
  EXPECT_TRUE(r3.passed());
  EXPECT_EQ(r3.witness.lhs, "249");
  EXPECT_EQ(r3.witness.rhs, "-21");
  EXPECT_EQ(*r3.witness.difference_valuation, Valuation(3));

  const CheckReport r5 = check_supercongruence_R(5);
  EXPECT_TRUE(r5.passed());
  EXPECT_EQ(r5.witness.lhs, "72745");  // difference 72750 = 2 * 3 * 5^3 * 97

  const CheckReport w5 = check_supercongruence_W(5);
  EXPECT_TRUE(w5.passed());
  EXPECT_EQ(w5.witness.lhs, "1413385");
  EXPECT_EQ(w5.witness.rhs, "-365");

  EXPECT_THROW(check_supercongruence_W(3), DomainError);
  EXPECT_THROW(check_supercongruence_R(2), DomainError);
  EXPECT_THROW(check_supercongruence_R(9), DomainError);
}

TEST(Supercongruence, ValuationsMatchOracle) {
  for (const auto& [p, v] : oracle()["new5_valuation"].items()) {
    const CheckReport r = check_supercongruence_R(std::stoul(p));
    ASSERT_TRUE(r.passed()) << p;
    ASSERT_EQ(r.witness.difference_valuation->to_string(), v.is_null() ? "inf" : v.dump()) << p;
  }
  for (const auto& [p, v] : oracle()["new6_valuation"].items()) {
    const CheckReport r = check_supercongruence_W(std::stoul(p));
    ASSERT_TRUE(r.passed()) << p;
    ASSERT_EQ(r.witness.difference_valuation->to_string(), v.is_null() ? "inf" : v.dump()) << p;
  }
}

TEST(Supercongruence, SweepChecksEveryPrime) {
  const auto primes = primes_between(3, 120);
  const SweepOutcome o = sweep_supercongruence_R(primes, 2);
  EXPECT_TRUE(o.passed());
  EXPECT_EQ(o.checked, primes.size());
  const std::vector<unsigned long> with_three = {3, 5};
  EXPECT_THROW(sweep_supercongruence_W(with_three), DomainError);
}

TEST(DoubleSumLemmas, ExactValuesMatchOracle) {
  for (const auto& [c, table] : oracle()["double_sum"].items()) {
    for (const auto& [p, value] : table.items()) {
      std::string want = value.get<std::string>();
      if (want.find('/') == std::string::npos) want += "/1";
      ASSERT_EQ(to_string(alternating_double_sum(std::stoul(p), std::stol(c))), want) << c << " " << p;
    }
  }
}

TEST(DoubleSumLemmas, SmallPrimes) {
  EXPECT_TRUE(check_double_sum_lemma(DoubleSumLemma::P2i1, 3).passed());
  EXPECT_TRUE(check_double_sum_lemma(DoubleSumLemma::P2i1, 5).passed());
  EXPECT_TRUE(check_double_sum_lemma(DoubleSumLemma::P2i3, 5).passed());
  EXPECT_THROW(check_double_sum_lemma(DoubleSumLemma::P2i3, 3), DomainError);
  EXPECT_EQ(parse_double_sum_lemma("p2i3"), DoubleSumLemma::P2i3);
  EXPECT_THROW(parse_double_sum_lemma("p2i2"), std::invalid_argument);
}

TEST(Lemmas, XAndYDivisibleByNPlusOne) {
  EXPECT_TRUE(check_lemma_X(60, 2).passed());
  EXPECT_TRUE(check_lemma_Y(60, 2).passed());
}

TEST(TwoSquares, MatchOracle) {
  EXPECT_EQ(two_square_decomposition(5).x, 1);
  EXPECT_EQ(two_square_decomposition(5).y, 2);
  EXPECT_EQ(two_square_decomposition(13).x, -3);
  EXPECT_EQ(two_square_decomposition(17).y, 4);
  for (const auto& [p, xy] : oracle()["two_squares"].items()) {
    const TwoSquares ts = two_square_decomposition(std::stoul(p));
    ASSERT_EQ(ts.x, xy[0].get<long>()) << p;
    ASSERT_EQ(ts.y, xy[1].get<long>()) << p;
    ASSERT_EQ(static_cast<unsigned long>(ts.x * ts.x + ts.y * ts.y), std::stoul(p));
  }
  EXPECT_THROW(two_square_decomposition(7), DomainError);
  EXPECT_THROW(two_square_decomposition(21), DomainError);
}

TEST(SunCongruence, HalfIndexValues) {
  const CheckReport r5 = check_sun_half_congruence(5);
  EXPECT_TRUE(r5.passed());
  EXPECT_EQ(r5.witness.lhs, "7");
  EXPECT_EQ(r5.witness.rhs, "7");
  EXPECT_EQ(extra(r5, "x"), "1");
  EXPECT_TRUE(check_sun_half_congruence(13).passed());
  EXPECT_THROW(check_sun_half_congruence(7), DomainError);
  for (const auto& [p, residue] : oracle()["half_index_mod_p2"].items()) {
    const unsigned long pp = std::stoul(p);
    BigInt r = eval_R(static_cast<unsigned>((pp - 1) / 2)) % BigInt(pp * pp);
    if (r < 0) r += pp * pp;
    ASSERT_EQ(to_string(r), residue.dump()) << p;
    ASSERT_TRUE(check_sun_half_congruence(pp).passed()) << p;
  }
}

TEST(ProofSteps, CatalogIsComplete) {
  const auto& cat = step_catalog();
  ASSERT_EQ(cat.size(), static_cast<std::size_t>(kStepCount));
  for (int i = 0; i < kStepCount; ++i) {
    EXPECT_EQ(cat[i].name, "S" + std::to_string(i + 1));
    EXPECT_EQ(parse_step_id(cat[i].name), cat[i].id);
  }
  EXPECT_THROW(parse_step_id("S99"), std::invalid_argument);
  for (StepId exact : {StepId::S1, StepId::S5, StepId::S7, StepId::S14}) EXPECT_TRUE(step(exact).exact);
}

TEST(ProofSteps, Examples) {
  EXPECT_TRUE(verify_proof_step(StepId::S1, 5).passed());
  EXPECT_TRUE(verify_proof_step(StepId::S8, 7).passed());
  EXPECT_TRUE(verify_proof_step(StepId::S20, 5).passed());
  EXPECT_FALSE(step_in_domain(StepId::S14, 3));
  EXPECT_THROW(verify_proof_step(StepId::S14, 3), DomainError);
  EXPECT_THROW(verify_proof_step(StepId::S1, 9), DomainError);
}

TEST(ProofSteps, AllStepsSmallPrimes) {
  std::vector<StepId> all;
  for (const auto& e : step_catalog()) all.push_back(e.id);
  const auto primes = primes_between(3, 31);
  const SweepOutcome o = sweep_proof_steps(all, primes, 2);
  EXPECT_TRUE(o.passed()) << (o.failures.empty() ? "" : o.failures.front().check + " " + o.failures.front().detail);
  std::size_t expected = 0;
  for (const auto& e : step_catalog()) {
    for (unsigned long p : primes) expected += step_in_domain(e.id, p) ? 1 : 0;
  }
  EXPECT_EQ(o.checked, expected);
}

TEST(ProofSteps, RelationsReportTheirValuation) {
  StepRelation exact{"x", ExactRational(1, 3), ExactRational(1, 3), true};
  EXPECT_TRUE(exact.holds(5));
  StepRelation off{"y", ExactRational(1), ExactRational(1 + 125), false, 3};
  EXPECT_TRUE(off.holds(5));
  off.power = 4;
  EXPECT_FALSE(off.holds(5));
  StepRelation integral{"z", ExactRational(1, 2), ExactRational(0), false, 0};
  EXPECT_TRUE(integral.holds(5));
  EXPECT_FALSE(integral.holds(2));
}

TEST(ProofSteps, RowTermsAtLastIndexAreNotIndividuallyDivisible) {
  // p C(m,i)C(s,i)C(i,m-s) / ((2i-1)(2m-2i-1)) at p=5, s=4, m=4, i=1 is 16:
  // only the row sum is divisible by p, which is what S22 checks.
  const long p = 5, s = 4, m = 4, i = 1;
  const ExactRational term = make_rational(p * binomial(m, i) * binomial(s, i) * binomial(i, m - s),
                                           BigInt((2 * i - 1) * (2 * m - 2 * i - 1)));
  EXPECT_EQ(term, 16);
  EXPECT_EQ(valuation(term, 5), Valuation(0));
  ExactRational row = 0;
  for (long mm = s; mm <= 2 * s; ++mm) {
    for (long ii = 0; ii <= s; ++ii) {
      row += make_rational(p * binomial(mm, ii) * binomial(s, ii) * binomial(ii, mm - s),
                           BigInt((2 * ii - 1) * (2 * mm - 2 * ii - 1)));
    }
  }
  EXPECT_TRUE(valuation(row, 5).at_least(1));
}
