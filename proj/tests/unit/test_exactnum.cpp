#include <gtest/gtest.h>

#include "errors.hpp"
#include "exactnum.hpp"
#include "support/oracle.hpp"

using namespace trisum;

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(3, -1), 0);
  EXPECT_THROW(binomial(-1, 0), std::invalid_argument);
}

TEST(Binomial, CacheAgreesWithFactorialRoute) {
  for (long n = 0; n <= 120; ++n) {
    for (long k = -1; k <= n + 1; ++k) {
      ASSERT_EQ(binomial_ref(n, k), binomial_via_factorials(n, k)) << n << "," << k;
    }
  }
  BigInt scratch;
  EXPECT_EQ(binomial_into(5000, 3, scratch), BigInt("20820835000"));
}

TEST(Binomial, PascalRule) {
  for (long n = 1; n <= 200; ++n) {
    for (long k = 1; k < n; ++k) {
      ASSERT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

TEST(Factorial, LegendreOrder) {
  EXPECT_EQ(ord_factorial(2, 10), 8u);
  EXPECT_EQ(ord_factorial(3, 10), 4u);
  EXPECT_EQ(ord_factorial(7, 6), 0u);
  EXPECT_THROW(ord_factorial(4, 10), std::invalid_argument);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul}) {
    for (unsigned long n = 0; n <= 300; ++n) {
      ASSERT_EQ(valuation(factorial(n), p), Valuation(static_cast<long>(ord_factorial(p, n))));
    }
  }
}

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(BigInt(270), 3), Valuation(3));
  EXPECT_EQ(valuation(ExactRational(1, 25), 5), Valuation(-2));
  EXPECT_TRUE(valuation(ExactRational(0), 7).is_infinite());
  EXPECT_TRUE(Valuation::infinite().at_least(1000000));
  EXPECT_THROW(Valuation::infinite().value(), std::logic_error);
  EXPECT_EQ(Valuation(2) + Valuation(-5), Valuation(-3));
  EXPECT_TRUE((Valuation(2) + Valuation::infinite()).is_infinite());
  EXPECT_LT(Valuation(100), Valuation::infinite());
}

TEST(Valuation, MultiplicativeOnRationals) {
  for (long a = -30; a <= 30; ++a) {
    for (long b = 1; b <= 30; ++b) {
      if (a == 0) continue;
      const ExactRational q(a, b);
      const ExactRational r(b * 3, a * a);
      for (unsigned long p : {2ul, 3ul, 5ul}) {
        ASSERT_EQ(valuation(ExactRational(q * r), p), valuation(q, p) + valuation(r, p));
      }
    }
  }
}

TEST(Congruence, Examples) {
  EXPECT_TRUE(congruent_mod_power(249, -21, 3, 3));
  EXPECT_FALSE(congruent_mod_power(249, -21, 3, 4));
  EXPECT_TRUE(congruent_mod_power(ExactRational(5, 7), ExactRational(5, 7), 11, 40));
  EXPECT_FALSE(congruent_mod_power(ExactRational(1, 3), 0, 3, 1));
  EXPECT_TRUE(congruent_mod_power(ExactRational(1, 3), ExactRational(28, 3), 3, 1));
}

TEST(DoubleFactorial, Oracle) {
  const auto& want = trisum::testing::oracle()["double_factorial_odd"];
  for (unsigned r = 0; r < want.size(); ++r) {
    EXPECT_EQ(to_string(double_factorial_odd(r)), want[r].dump()) << r;
  }
  EXPECT_EQ(double_factorial_odd(3), 105);
}

TEST(Primes, SieveMatchesTrialDivision) {
  const auto ps = primes_between(0, 500);
  std::size_t idx = 0;
  for (unsigned long n = 0; n <= 500; ++n) {
    bool prime = n >= 2;
    for (unsigned long d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
    ASSERT_EQ(is_prime(n), prime) << n;
    if (prime) {
      ASSERT_LT(idx, ps.size());
      ASSERT_EQ(ps[idx++], n);
    }
  }
  EXPECT_EQ(idx, ps.size());
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("-14/6")), "-7/3");
  EXPECT_EQ(to_string(parse_rational("12")), "12/1");
  EXPECT_EQ(parse_bigint("-000123"), -123);
  EXPECT_THROW(parse_bigint("12a"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(make_rational(1, 0), std::invalid_argument);
  EXPECT_THROW(to_integer(ExactRational(1, 2), "half"), ArithmeticError);
  EXPECT_EQ(to_integer(make_rational(12, 4), "three"), 3);
}

TEST(SmallDenominatorSum, MatchesDirectSum) {
  SmallDenominatorSum s;
  ExactRational direct = 0;
  for (long d = -40; d <= 40; ++d) {
    if (d == 0) continue;
    const BigInt num = BigInt(d * d) - 7;
    s.add(num, d * 3 + (d > 0 ? 1 : -1));
    direct += make_rational(num, BigInt(d * 3 + (d > 0 ? 1 : -1)));
  }
  EXPECT_EQ(s.value(), direct);
}
