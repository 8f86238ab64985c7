#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "congruences.hpp"
#include "errors.hpp"
#include "explorer.hpp"
#include "support/oracle.hpp"

using namespace trisum;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("trisum_explorer_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

nlohmann::json without_ts(const SweepRecord& r) {
  nlohmann::json j = r.to_json();
  j.erase("ts");
  return j;
}

std::vector<nlohmann::json> canonical(std::vector<SweepRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const SweepRecord& a, const SweepRecord& b) { return a.key() < b.key(); });
  std::vector<nlohmann::json> out;
  for (const auto& r : records) out.push_back(without_ts(r));
  return out;
}

SweepConfig config_for(ConjectureId id, unsigned from, unsigned to, const fs::path& out, unsigned r = 0) {
  SweepConfig c;
  c.conjecture = builtin_conjecture(id);
  c.from = from;
  c.to = to;
  c.r = r;
  c.output = out;
  c.batch = 16;
  return c;
}

}  // namespace

TEST(Conjectures, RefinementExamples) {
  const auto c1 = explore(builtin_conjecture(ConjectureId::C1), 1, 5);
  EXPECT_TRUE(c1[1].pass);
  EXPECT_EQ(c1[1].witness.remainder, "0");
  EXPECT_EQ(c1[2].witness.sum, "249");
  EXPECT_EQ(c1[2].witness.modulus, "48");
  EXPECT_EQ(c1[4].witness.sum, "72745");
  EXPECT_EQ(c1[4].witness.modulus, "80");
  const auto c2 = explore(builtin_conjecture(ConjectureId::C2), 1, 3);
  EXPECT_EQ(c2[0].witness.sum, "1");
  EXPECT_EQ(c2[1].witness.sum, "148");
  EXPECT_EQ(c2[2].witness.sum, "153");
  EXPECT_EQ(c2[2].witness.modulus, "24");
  for (const auto& r : c2) EXPECT_TRUE(r.pass);
}

TEST(Conjectures, GeneralExamples) {
  const auto c3 = explore(builtin_conjecture(ConjectureId::C3), 1, 2, 1);
  EXPECT_EQ(c3[1].witness.sum, "148");
  EXPECT_TRUE(c3[1].pass);
  EXPECT_EQ(c3[1].r, std::optional<unsigned>(1));
  EXPECT_TRUE(explore(builtin_conjecture(ConjectureId::C3), 1, 1, 2)[0].pass);
  EXPECT_THROW(explore(builtin_conjecture(ConjectureId::C3), 1, 5, 0), std::invalid_argument);
  EXPECT_THROW(explore(builtin_conjecture(ConjectureId::C1), 0, 5), std::invalid_argument);
}

TEST(Conjectures, RemaindersMatchOracle) {
  const auto& o = trisum::testing::oracle();
  const unsigned top = static_cast<unsigned>(o["C1_remainder"].size() - 1);
  const auto c1 = explore(builtin_conjecture(ConjectureId::C1), 1, top, 0, 2);
  const auto c2 = explore(builtin_conjecture(ConjectureId::C2), 1, top, 0, 2);
  for (unsigned n = 1; n <= top; ++n) {
    ASSERT_EQ(c1[n - 1].witness.remainder, o["C1_remainder"][n].dump()) << n;
    ASSERT_EQ(c2[n - 1].witness.remainder, o["C2_remainder"][n].dump()) << n;
  }
  for (const auto& [r, values] : o["C3_remainder"].items()) {
    const auto c3 = explore(builtin_conjecture(ConjectureId::C3), 1, static_cast<unsigned>(values.size() - 1),
                            std::stoul(r));
    for (unsigned n = 1; n < values.size(); ++n) {
      const std::string want = values[n].is_string() ? values[n].get<std::string>() : values[n].dump();
      ASSERT_EQ(c3[n - 1].witness.remainder, want) << r << " " << n;
    }
  }
}

TEST(Conjectures, C3AtROneMatchesWDivisibility) {
  const auto c3 = explore(builtin_conjecture(ConjectureId::C3), 1, 150, 1, 2);
  for (unsigned n = 1; n <= 150; ++n) {
    EXPECT_EQ(c3[n - 1].pass, check_divisibility_W(n).passed()) << n;
  }
}

TEST(Conjectures, ParseIds) {
  EXPECT_EQ(parse_conjecture_id("C2"), ConjectureId::C2);
  EXPECT_THROW(parse_conjecture_id("C4"), std::invalid_argument);
}

TEST(MinimalMultiplier, MatchesOracle) {
  for (const auto& row : trisum::testing::oracle()["minimal_multiplier"]) {
    EXPECT_EQ(to_string(minimal_multiplier(row["r"].get<unsigned>(), row["max_n"].get<unsigned>())),
              row["value"].get<std::string>());
  }
}

TEST(MinimalMultiplier, NonDecreasingAndDividesSuggestedChoice) {
  for (unsigned r = 1; r <= 3; ++r) {
    BigInt previous = 1;
    const BigInt suggested = double_factorial_odd(r) * double_factorial_odd(r);
    for (unsigned n = 1; n <= 30; ++n) {
      const BigInt a = minimal_multiplier(r, n);
      EXPECT_EQ(a % previous, 0) << r << " " << n;
      EXPECT_EQ(suggested % a, 0) << r << " " << n;
      previous = a;
    }
  }
}

TEST(SweepRecord, JsonRoundTrip) {
  SweepRecord r;
  r.check = "C3";
  r.n = 12;
  r.r = 2;
  r.pass = false;
  r.witness = {false, "7/3", "12", "non-integral"};
  r.ts = "2026-01-01T00:00:00.000Z";
  const nlohmann::json j = r.to_json();
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["r"], 2);
  const SweepRecord back = SweepRecord::from_json(j);
  EXPECT_EQ(back.to_json(), j);
  r.r.reset();
  EXPECT_TRUE(r.to_json()["r"].is_null());
}

TEST(RunSweep, FreshRunWritesOneRecordPerN) {
  TempDir dir;
  const SweepResult res = run_sweep(config_for(ConjectureId::C1, 1, 100, dir / "c1.jsonl"));
  EXPECT_TRUE(res.summary.passed());
  EXPECT_TRUE(res.complete);
  EXPECT_EQ(res.new_records, 100u);
  const auto records = read_records(dir / "c1.jsonl");
  ASSERT_EQ(records.size(), 100u);
  std::set<unsigned> ns;
  for (const auto& r : records) {
    EXPECT_TRUE(r.pass);
    ns.insert(r.n);
  }
  EXPECT_EQ(ns.size(), 100u);
  EXPECT_TRUE(fs::exists(dir / "c1.jsonl.ckpt"));
}

TEST(RunSweep, ResumeAfterInterruptionAddsOnlyMissingRecords) {
  TempDir dir;
  SweepConfig c = config_for(ConjectureId::C1, 1, 100, dir / "c1.jsonl");
  c.stop_after = 50;
  const SweepResult first = run_sweep(c);
  EXPECT_FALSE(first.complete);
  EXPECT_EQ(first.new_records, 50u);
  EXPECT_EQ(first.summary.status, CheckStatus::Error);

  c.stop_after.reset();
  c.resume = true;
  const SweepResult second = run_sweep(c);
  EXPECT_TRUE(second.complete);
  EXPECT_EQ(second.new_records, 50u);
  EXPECT_EQ(second.total_records, 100u);
  EXPECT_EQ(read_records(c.output).size(), 100u);

  const SweepResult third = run_sweep(c);
  EXPECT_EQ(third.new_records, 0u);
  EXPECT_EQ(read_records(c.output).size(), 100u);
}

TEST(RunSweep, TornTrailingLineIsDiscardedOnResume) {
  TempDir dir;
  SweepConfig c = config_for(ConjectureId::C2, 1, 60, dir / "c2.jsonl");
  c.stop_after = 17;
  run_sweep(c);
  {
    std::ofstream out(c.output, std::ios::app);
    out << R"({"check":"C2","n":18,"r":null,"sta)";
  }
  EXPECT_EQ(read_records(c.output).size(), 17u);
  c.stop_after.reset();
  c.resume = true;
  run_sweep(c);

  const auto resumed = read_records(c.output);
  const SweepResult fresh = run_sweep(config_for(ConjectureId::C2, 1, 60, dir / "fresh.jsonl"));
  EXPECT_TRUE(fresh.complete);
  EXPECT_EQ(canonical(resumed), canonical(read_records(dir / "fresh.jsonl")));
}

TEST(RunSweep, RepeatedRunsAreIdenticalUpToTimestamps) {
  TempDir dir;
  SweepConfig a = config_for(ConjectureId::C3, 1, 40, dir / "a.jsonl", 2);
  SweepConfig b = config_for(ConjectureId::C3, 1, 40, dir / "b.jsonl", 2);
  b.workers = 3;
  b.batch = 7;
  run_sweep(a);
  run_sweep(b);
  EXPECT_EQ(canonical(read_records(a.output)), canonical(read_records(b.output)));
}

TEST(RunSweep, FingerprintMismatchRefusesResume) {
  TempDir dir;
  SweepConfig c = config_for(ConjectureId::C1, 1, 30, dir / "c1.jsonl");
  run_sweep(c);
  SweepConfig other = c;
  other.to = 40;
  other.resume = true;
  EXPECT_NE(config_fingerprint(c), config_fingerprint(other));
  EXPECT_THROW(run_sweep(other), CheckpointMismatch);
  // Workers and batch size are not part of the fingerprint.
  SweepConfig same = c;
  same.workers = 4;
  same.batch = 3;
  EXPECT_EQ(config_fingerprint(c), config_fingerprint(same));
}

TEST(RunSweep, ResumeWithoutCheckpointIsRejected) {
  TempDir dir;
  SweepConfig c = config_for(ConjectureId::C1, 1, 10, dir / "c1.jsonl");
  run_sweep(c);
  fs::remove(dir / "c1.jsonl.ckpt");
  c.resume = true;
  EXPECT_THROW(run_sweep(c), CheckpointMismatch);
}

TEST(RunSweep, UnwritableOutputIsAnIoError) {
  TempDir dir;
  SweepConfig c = config_for(ConjectureId::C1, 1, 5, dir / "missing" / "deeper" / "c1.jsonl");
  EXPECT_THROW(run_sweep(c), IoError);
}

TEST(RunSweep, EmptyRangeIsRejected) {
  TempDir dir;
  EXPECT_THROW(run_sweep(config_for(ConjectureId::C1, 5, 4, dir / "x.jsonl")), std::invalid_argument);
  EXPECT_THROW(run_sweep(config_for(ConjectureId::C3, 1, 4, dir / "x.jsonl", 0)), std::invalid_argument);
}

TEST(RunSweep, FalseConjectureProducesCounterexampleRecords) {
  TempDir dir;
  ConjectureSpec odd_only{"odd-n", false, [](unsigned) { return SequenceId::R(); },
                          [](const ExactRational& s, unsigned n, unsigned) {
                            ConjectureVerdict v;
                            v.sum = to_string(s.get_num());
                            v.modulus = "2";
                            v.remainder = std::to_string(n % 2);
                            v.holds = n % 2 == 1;
                            return v;
                          }};
  SweepConfig c;
  c.conjecture = odd_only;
  c.from = 1;
  c.to = 10;
  c.output = dir / "odd.jsonl";
  const SweepResult res = run_sweep(c);
  EXPECT_EQ(res.summary.status, CheckStatus::Fail);
  ASSERT_EQ(res.failures.size(), 5u);
  EXPECT_EQ(res.failures.front().n, 2u);
  EXPECT_EQ(res.failures.front().witness.sum, "4");
  std::size_t failing = 0;
  for (const auto& r : read_records(c.output)) failing += r.pass ? 0 : 1;
  EXPECT_EQ(failing, 5u);
}

TEST(ReadRecords, MalformedInteriorLineIsAnError) {
  TempDir dir;
  const auto path = dir / "bad.jsonl";
  {
    std::ofstream out(path);
    out << "{not json}\n";
  }
  EXPECT_THROW(read_records(path), IoError);
  EXPECT_THROW(read_records(dir / "absent.jsonl"), IoError);
}
