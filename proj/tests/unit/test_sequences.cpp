#include <gtest/gtest.h>

#include "errors.hpp"
#include "sequences.hpp"
#include "support/oracle.hpp"

using namespace trisum;
using trisum::testing::oracle;
using trisum::testing::oracle_text;

namespace {

std::string text(const ExactRational& q) {
  return q.get_den() == 1 ? to_string(q.get_num()) : to_string(q);
}

}  // namespace

TEST(Sequences, HandValues) {
  EXPECT_EQ(eval_R(0), -1);
  EXPECT_EQ(eval_R(2), 7);
  EXPECT_EQ(eval_R(3), 25);
  EXPECT_EQ(eval_W(0), -1);
  EXPECT_EQ(eval_W(1), -7);
  EXPECT_EQ(eval_W(3), 73);
  EXPECT_EQ(eval_R_general(0, 1), ExactRational(-1, 3));
  EXPECT_EQ(eval_R_general(1, 1), ExactRational(-7, 3));
  EXPECT_EQ(eval_R_general(2, 0), 7);
  EXPECT_EQ(eval_X(0), 1);
  EXPECT_EQ(eval_X(1), 0);
  EXPECT_EQ(eval_X(2), 48);
  EXPECT_EQ(eval_Z(0), 9);
  EXPECT_EQ(eval_Z(1), 432);
  EXPECT_EQ(eval_Z(2) % 3, 0);
}

TEST(Sequences, MatchOracle) {
  const auto& o = oracle();
  for (unsigned n = 0; n < o["R"].size(); ++n) {
    ASSERT_EQ(to_string(eval_R(n)), oracle_text(o["R"][n])) << "R_" << n;
    ASSERT_EQ(to_string(eval_W(n)), oracle_text(o["W"][n])) << "W_" << n;
  }
  for (unsigned n = 0; n < o["X"].size(); ++n) {
    ASSERT_EQ(to_string(eval_X(n)), oracle_text(o["X"][n])) << "X_" << n;
    ASSERT_EQ(to_string(eval_Z(n)), oracle_text(o["Z"][n])) << "Z_" << n;
  }
  for (const auto& [r, values] : o["Rg"].items()) {
    for (unsigned n = 0; n < values.size(); ++n) {
      ASSERT_EQ(text(eval_R_general(n, std::stoul(r))), values[n].get<std::string>()) << n << "," << r;
    }
  }
}

TEST(Sequences, GeneralFamilyContainsRAndW) {
  for (unsigned n = 0; n <= 40; ++n) {
    EXPECT_EQ(eval_R_general(n, 0), ExactRational(eval_R(n)));
    EXPECT_EQ(eval_R_general(n, 1) * 3, ExactRational(eval_W(n)));
  }
}

TEST(Sequences, YIsZOverNine) {
  for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(eval_Y(n) * 9, eval_Z(n));
}

TEST(Sequences, PrefixAgreesWithPointwise) {
  for (SequenceId id : {SequenceId::R(), SequenceId::W(), SequenceId::RGeneral(2), SequenceId::X()}) {
    const auto values = eval_prefix(id, 15, 3);
    ASSERT_EQ(values.size(), 15u);
    for (unsigned n = 0; n < 15; ++n) EXPECT_EQ(values[n], eval(id, n)) << id.name() << " " << n;
  }
}

TEST(WeightedSquareSum, HandValues) {
  EXPECT_EQ(weighted_square_sum(SequenceId::R(), 3), 249);
  EXPECT_EQ(weighted_square_sum(SequenceId::R(), 1), 1);
  EXPECT_EQ(weighted_square_sum(SequenceId::R(), 5), 72745);
  EXPECT_EQ(weighted_square_sum(SequenceId::W(), 2), 148);
  EXPECT_EQ(weighted_square_sum(SequenceId::W(), 5), 1413385);
  EXPECT_THROW(weighted_square_sum(SequenceId::R(), 0), std::invalid_argument);
}

TEST(WeightedSquareSum, PrefixMatchesOracle) {
  const auto& o = oracle();
  const unsigned top = static_cast<unsigned>(o["square_sum_R"].size() - 1);
  const auto r = weighted_square_prefix(SequenceId::R(), top, 2);
  const auto w = weighted_square_prefix(SequenceId::W(), top, 2);
  ASSERT_EQ(r.size(), top + 1);
  for (unsigned n = 0; n <= top; ++n) {
    ASSERT_EQ(text(r[n]), oracle_text(o["square_sum_R"][n])) << n;
    ASSERT_EQ(text(w[n]), oracle_text(o["square_sum_W"][n])) << n;
  }
}

TEST(SequenceId, Parse) {
  EXPECT_EQ(SequenceId::parse("R"), SequenceId::R());
  EXPECT_EQ(SequenceId::parse("Rg", 4), SequenceId::RGeneral(4));
  EXPECT_THROW(SequenceId::parse("Q"), std::invalid_argument);
}

TEST(Sequences, WorkerCountDoesNotChangeValues) {
  const auto one = weighted_square_prefix(SequenceId::W(), 120, 1);
  const auto four = weighted_square_prefix(SequenceId::W(), 120, 4);
  EXPECT_EQ(one, four);
}
