// Runs every acceptance criterion at full scale and prints one line each:
//   criterion N: PASS|FAIL (<seconds>s) <details>
// Exit status is 0 only if all criteria pass.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "congruences.hpp"
#include "divisibility.hpp"
#include "explorer.hpp"
#include "identities.hpp"
#include "parallel.hpp"
#include "recurrences.hpp"
#include "sequences.hpp"

using namespace trisum;

namespace {

unsigned workers() { return default_workers(); }

/// Collects failed expectations for one criterion.
struct Verdict {
  std::vector<std::string> problems;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  void expect_outcome(const SweepOutcome& o, const std::string& what) {
    std::ostringstream s;
    s << what << " (" << o.checked << " cases)";
    if (!o.passed()) {
      const CheckReport& f = o.failures.front();
      s << " failed " << o.failures.size() << "x, first " << f.check << ": " << f.detail
        << " lhs=" << f.witness.lhs << " rhs=" << f.witness.rhs;
      problems.push_back(s.str());
    } else {
      notes.push_back(s.str());
    }
  }
  void expect_report(const CheckReport& r, const std::string& what) {
    expect(r.passed(), what + ": " + r.detail + " lhs=" + r.witness.lhs + " rhs=" + r.witness.rhs);
  }
};

std::string extra(const CheckReport& r, const std::string& key) {
  for (const auto& [k, v] : r.witness.extra) {
    if (k == key) return v;
  }
  return "";
}

std::vector<unsigned long> odd_primes_upto(unsigned long hi, unsigned long above) {
  std::vector<unsigned long> out;
  for (unsigned long p : primes_between(above + 1, hi)) {
    if (p > 2) out.push_back(p);
  }
  return out;
}

Verdict eq5_divisibility() {
  Verdict v;
  v.expect_outcome(sweep_divisibility_R(500, workers()), "n | sum (2k+1) R_k^2, n <= 500");
  v.expect(weighted_square_sum(SequenceId::R(), 3) == 249, "sum at n=3 is 249");
  v.expect(weighted_square_sum(SequenceId::R(), 5) == 72745, "sum at n=5 is 72745");
  return v;
}

Verdict new5_supercongruence() {
  Verdict v;
  const auto primes = odd_primes_upto(199, 2);
  v.expect_outcome(sweep_supercongruence_R(primes, workers()), "odd p <= 199");
  const CheckReport r3 = check_supercongruence_R(3);
  v.expect(parse_rational(r3.witness.lhs) - parse_rational(r3.witness.rhs) == 270,
           "p=3 difference 270, got " + r3.witness.lhs + " - " + r3.witness.rhs);
  return v;
}

Verdict eq6_new6() {
  Verdict v;
  v.expect_outcome(sweep_divisibility_W(500, workers()), "n | 9 sum (2k+1) W_k^2, n <= 500");
  v.expect_outcome(sweep_supercongruence_W(odd_primes_upto(199, 3), workers()), "3 < p <= 199");
  const CheckReport w5 = check_supercongruence_W(5);
  v.expect(parse_rational(w5.witness.lhs) - parse_rational(w5.witness.rhs) == 1413750,
           "p=5 difference 1413750, got " + w5.witness.lhs + " - " + w5.witness.rhs);
  return v;
}

Verdict divisibility_lemma() {
  Verdict v;
  // sweep_divisibility evaluates both routes at every triple and fails on any
  // disagreement, so a clean outcome is also the agreement check.
  const SweepOutcome o = sweep_divisibility(60, workers());
  v.expect_outcome(o, "0 <= k <= n <= m <= 2n, n <= 60, exact and valuation routes");
  std::size_t triples = 0;
  for (unsigned n = 0; n <= 60; ++n) triples += static_cast<std::size_t>(n + 1) * (n + 1);
  v.expect(o.checked == triples, "every triple visited");
  return v;
}

Verdict floor_inequalities() {
  Verdict v;
  v.expect_outcome(sweep_floor_inequality(60, 120, workers()), "floor inequality n <= 60, d <= 120");
  v.expect_outcome(sweep_floor_cases(60, 120), "case split n <= 60, d <= 120");
  v.expect_outcome(sweep_bober(100, 200), "binomial floor inequality n <= 100, d <= 200");
  return v;
}

Verdict lemmas_x_y() {
  Verdict v;
  v.expect_report(check_lemma_X(300, workers()), "(n+1) | X_n, n <= 300");
  v.expect_report(check_lemma_Y(300, workers()), "(n+1) | Z_n, n <= 300");
  v.expect(eval_X(0) == 1 && eval_X(1) == 0 && eval_X(2) == 48, "X_0..X_2 = 1, 0, 48");
  v.expect(eval_Z(0) == 9 && eval_Z(1) == 432, "Z_0, Z_1 = 9, 432");
  return v;
}

Verdict recurrences() {
  Verdict v;
  for (RecurrenceId id : {RecurrenceId::R5, RecurrenceId::R3, RecurrenceId::W5, RecurrenceId::W3}) {
    v.expect_report(verify_annihilates(id, 200, workers()), recurrence(id).name + " n <= 200");
  }
  for (CombinationId id : {CombinationId::CombX, CombinationId::CombZ}) {
    v.expect_report(verify_operator_combination(id, 10, 50, 20240601),
                    combination(id).name + " 10 random sequences, n <= 50");
  }
  return v;
}

Verdict double_sum_lemmas() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  double up_to_97 = 0.0;
  for (DoubleSumLemma which : {DoubleSumLemma::P2i1, DoubleSumLemma::P2i3}) {
    const auto primes = odd_primes_upto(97, which == DoubleSumLemma::P2i1 ? 2 : 3);
    std::vector<CheckReport> reports(primes.size());
    parallel_for(primes.size(), workers(),
                 [&](std::size_t i) { reports[i] = check_double_sum_lemma(which, primes[i]); });
    for (const auto& r : reports) v.expect_report(r, r.check);
  }
  up_to_97 = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.expect(up_to_97 < 300.0, "p <= 97 under 5 minutes");
  v.notes.push_back("p <= 97 in " + std::to_string(up_to_97) + "s");
  for (DoubleSumLemma which : {DoubleSumLemma::P2i1, DoubleSumLemma::P2i3}) {
    const auto primes = primes_between(98, 199);
    std::vector<CheckReport> reports(primes.size());
    parallel_for(primes.size(), workers(),
                 [&](std::size_t i) { reports[i] = check_double_sum_lemma(which, primes[i]); });
    for (const auto& r : reports) v.expect_report(r, r.check);
  }
  return v;
}

Verdict proof_steps() {
  Verdict v;
  std::vector<StepId> all;
  for (const auto& e : step_catalog()) all.push_back(e.id);
  v.expect(all.size() == 24, "24 steps");
  v.expect_outcome(sweep_proof_steps(all, primes_between(3, 97), workers()), "S1..S24, p <= 97");
  for (StepId id : {StepId::S1, StepId::S5, StepId::S7, StepId::S14}) {
    v.expect(step(id).exact, step(id).name + " is exact");
    for (unsigned long p : primes_between(3, 97)) {
      if (!step_in_domain(id, p)) continue;
      const CheckReport r = verify_proof_step(id, p);
      v.expect(r.passed() && r.witness.lhs == r.witness.rhs,
               step(id).name + " equality at p=" + std::to_string(p));
    }
  }
  return v;
}

Verdict sun_congruence() {
  Verdict v;
  std::size_t count = 0;
  for (unsigned long p : primes_between(5, 199)) {
    if (p % 4 != 1) continue;
    const CheckReport r = check_sun_half_congruence(p);
    const TwoSquares ts = two_square_decomposition(p);
    v.expect_report(r, "p=" + std::to_string(p));
    v.expect(ts.x * ts.x + ts.y * ts.y == static_cast<long>(p) && ((ts.x % 4) + 4) % 4 == 1,
             "two-square witness p=" + std::to_string(p));
    ++count;
  }
  v.notes.push_back(std::to_string(count) + " primes");
  const CheckReport r5 = check_sun_half_congruence(5);
  v.expect(r5.witness.lhs == "7" && extra(r5, "x") == "1", "p=5 gives R_2 = 7 with x = 1");
  v.expect(congruent_mod_power(ExactRational(7), ExactRational(5 - (-1) * 2 * 1), 5, 2),
           "7 == 5 + 2 (mod 25)");
  return v;
}

Verdict identities() {
  Verdict v;
  for (const auto& e : identity_catalog()) {
    long bound = 30;
    if (e.id == IdentityId::I1) bound = 15;
    if (e.id == IdentityId::I7 || e.id == IdentityId::I8) bound = 40;
    const std::vector<long> bounds(e.params.size(), bound);
    v.expect_outcome(sweep_identity(e.id, bounds, workers()), e.name + " <= " + std::to_string(bound));
  }
  return v;
}

Verdict conjecture_sweeps() {
  Verdict v;
  const auto all_pass = [](const std::vector<SweepRecord>& recs) {
    for (const auto& r : recs) {
      if (!r.pass) return "fails at n=" + std::to_string(r.n);
    }
    return std::string();
  };
  for (ConjectureId id : {ConjectureId::C1, ConjectureId::C2}) {
    const auto recs = explore(builtin_conjecture(id), 1, 500, 0, workers());
    const std::string bad = all_pass(recs);
    v.expect(bad.empty() && recs.size() == 500, builtin_conjecture(id).name + " n <= 500 " + bad);
  }
  for (unsigned r = 1; r <= 5; ++r) {
    const auto recs = explore(builtin_conjecture(ConjectureId::C3), 1, 200, r, workers());
    const std::string bad = all_pass(recs);
    v.expect(bad.empty() && recs.size() == 200, "C3 r=" + std::to_string(r) + " n <= 200 " + bad);
  }
  const auto c3 = explore(builtin_conjecture(ConjectureId::C3), 1, 200, 1, workers());
  for (const auto& rec : c3) {
    v.expect(rec.pass == check_divisibility_W(rec.n).passed(),
             "C3 r=1 matches W divisibility at n=" + std::to_string(rec.n));
  }

  // A deliberately false claim must come back as failing records with witnesses.
  ConjectureSpec bogus;
  bogus.name = "square-sum-even";
  bogus.sequence = [](unsigned) { return SequenceId::R(); };
  bogus.test = [](const ExactRational& sum, unsigned, unsigned) {
    ConjectureVerdict out;
    const BigInt s = to_integer(sum, "square sum");
    out.sum = to_string(s);
    out.modulus = "2";
    out.remainder = to_string(BigInt(s % 2));
    out.holds = s % 2 == 0;
    return out;
  };
  const auto dir = std::filesystem::temp_directory_path() / "trisum_acceptance_bogus";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  SweepConfig cfg;
  cfg.conjecture = bogus;
  cfg.from = 1;
  cfg.to = 40;
  cfg.output = dir / "bogus.jsonl";
  cfg.workers = workers();
  const SweepResult res = run_sweep(cfg);
  std::size_t expected_failures = 0;
  for (unsigned n = 1; n <= 40; ++n) {
    expected_failures += to_integer(weighted_square_sum(SequenceId::R(), n), "sum") % 2 != 0;
  }
  v.expect(expected_failures > 0, "injected conjecture is false somewhere");
  v.expect(!res.summary.passed() && res.failures.size() == expected_failures,
           "injected conjecture reports every counterexample");
  const auto on_disk = read_records(cfg.output);
  std::size_t failing_on_disk = 0;
  for (const auto& r : on_disk) {
    if (r.pass) continue;
    ++failing_on_disk;
    v.expect(!r.witness.sum.empty() && r.witness.remainder == "1", "counterexample witness n=" +
                                                                       std::to_string(r.n));
  }
  v.expect(failing_on_disk == expected_failures, "counterexample records persisted");
  v.notes.push_back("injected conjecture: " + std::to_string(expected_failures) + " counterexamples");
  std::filesystem::remove_all(dir);
  return v;
}

Verdict resume_determinism() {
  Verdict v;
  const auto dir = std::filesystem::temp_directory_path() / "trisum_acceptance_resume";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);

  SweepConfig straight;
  straight.conjecture = builtin_conjecture(ConjectureId::C1);
  straight.from = 1;
  straight.to = 200;
  straight.output = dir / "straight.jsonl";
  straight.workers = workers();
  straight.batch = 16;
  run_sweep(straight);

  SweepConfig killed = straight;
  killed.output = dir / "killed.jsonl";
  killed.stop_after = 70;
  const SweepResult partial = run_sweep(killed);
  v.expect(!partial.complete, "interrupted run left unfinished");
  {
    // A process killed mid-write leaves a partial last line.
    std::ofstream torn(killed.output, std::ios::app);
    torn << R"({"check":"C1","n":81,"r":null,"sta)";
  }
  killed.stop_after.reset();
  killed.resume = true;
  killed.workers = 1;
  killed.batch = 7;
  const SweepResult resumed = run_sweep(killed);
  v.expect(resumed.complete && resumed.summary.passed(), "resumed run completes");

  const auto without_ts = [](const std::vector<SweepRecord>& recs) {
    std::map<std::tuple<std::string, unsigned, long>, std::string> out;
    for (SweepRecord r : recs) {
      r.ts.clear();
      out[r.key()] = r.to_json().dump();
    }
    return out;
  };
  const auto a = read_records(straight.output);
  const auto b = read_records(killed.output);
  v.expect(a.size() == 200 && b.size() == 200, "200 records each, got " + std::to_string(a.size()) +
                                                   " and " + std::to_string(b.size()));
  v.expect(without_ts(a) == without_ts(b), "record sets identical apart from timestamps");
  std::filesystem::remove_all(dir);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria = {
      {1, eq5_divisibility},  {2, new5_supercongruence}, {3, eq6_new6},
      {4, divisibility_lemma}, {5, floor_inequalities},  {6, lemmas_x_y},
      {7, recurrences},        {8, double_sum_lemmas},   {9, proof_steps},
      {10, sun_congruence},    {11, identities},         {12, conjecture_sweeps},
      {13, resume_determinism}};
  int failed = 0;
  for (const auto& [number, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.problems.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    const bool ok = v.problems.empty();
    failed += ok ? 0 : 1;
    std::cout << "criterion " << number << ": " << (ok ? "PASS" : "FAIL") << " (" << timing << ")";
    for (const auto& n : ok ? v.notes : v.problems) std::cout << "; " << n;
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
