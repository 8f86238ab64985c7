#pragma once

// Divisibility statements and mod-p^3 supercongruences for the weighted
// square sums of R and W, the two alternating double-sum lemmas, the
// half-index congruence for R_{(p-1)/2}, and a catalog (S1..S24) of every
// intermediate relation used to prove them.
//
// "a == b (mod p^k)" always means v_p(a - b) >= k; see congruent_mod_power.

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exactnum.hpp"
#include "report.hpp"

namespace trisum {

/// n | sum_{k<n} (2k+1) R_k^2.   Check id "eq5".
CheckReport check_divisibility_R(unsigned n);
/// n | 9 sum_{k<n} (2k+1) W_k^2. Check id "eq6".
CheckReport check_divisibility_W(unsigned n);
/// sum_{k<p} (2k+1) R_k^2 == 4p(-1)^((p-1)/2) - p^2 (mod p^3), p an odd prime. "new5".
CheckReport check_supercongruence_R(unsigned long p);
/// sum_{k<p} (2k+1) W_k^2 == 12p(-1)^((p-1)/2) - 17p^2 (mod p^3), p > 3 prime. "new6".
CheckReport check_supercongruence_W(unsigned long p);

/// Range forms sharing one pass over the sequence.
SweepOutcome sweep_divisibility_R(unsigned max_n, unsigned workers = 1);
SweepOutcome sweep_divisibility_W(unsigned max_n, unsigned workers = 1);
SweepOutcome sweep_supercongruence_R(std::span<const unsigned long> primes, unsigned workers = 1);
SweepOutcome sweep_supercongruence_W(std::span<const unsigned long> primes, unsigned workers = 1);

enum class DoubleSumLemma { P2i1, P2i3 };

/// sum_{i,j=0}^{p-1} p^2 (-1)^{i+j} / ((2i-c)(2j-c)(i+j+1)).
ExactRational alternating_double_sum(unsigned long p, long c);

/// P2i1: the double sum with c=1 is == 4p(-1)^((p-1)/2) + 3p^2, p odd.
/// P2i3: with c=3 it is == (4p/3)(-1)^((p-1)/2) + p^2/3, p > 3.
CheckReport check_double_sum_lemma(DoubleSumLemma which, unsigned long p);
DoubleSumLemma parse_double_sum_lemma(std::string_view name);

/// (n+1) | X_n for all n <= max_n. Check id "X".
CheckReport check_lemma_X(unsigned max_n, unsigned workers = 1);
/// (n+1) | Z_n for all n <= max_n. Check id "Y".
CheckReport check_lemma_Y(unsigned max_n, unsigned workers = 1);

struct TwoSquares {
  long x;  // x == 1 (mod 4)
  long y;  // y >= 0
};

/// p = x^2 + y^2 with x == 1 (mod 4), y >= 0. Throws DomainError unless p is
/// a prime == 1 (mod 4).
TwoSquares two_square_decomposition(unsigned long p);

/// R_{(p-1)/2} == p - (-1)^((p-1)/4) 2x (mod p^2).
CheckReport check_sun_half_congruence(unsigned long p);

// ---------------------------------------------------------------------------
// Proof-step catalog

enum class StepId {
  S1, S2, S3, S4, S5, S6, S7, S8, S9, S10, S11, S12,
  S13, S14, S15, S16, S17, S18, S19, S20, S21, S22, S23, S24
};

inline constexpr int kStepCount = 24;

/// One relation inside a step: exact equality, or v_p(lhs - rhs) >= power
/// (power 0 states that lhs - rhs is p-integral).
struct StepRelation {
  std::string label;
  ExactRational lhs;
  ExactRational rhs;
  bool exact = false;
  int power = 3;

  bool holds(unsigned long p) const;
};

class StepContext;

struct StepEntry {
  StepId id;
  std::string name;     // "S1"
  std::string summary;  // one-line statement of the main relation
  bool exact = false;   // the main relation is an exact equality
  bool needs_p_above_3 = false;
  /// The first relation is the step's headline; the rest are the displayed
  /// intermediate forms it is derived from.
  std::function<std::vector<StepRelation>(StepContext&)> relations;
};

const std::vector<StepEntry>& step_catalog();
const StepEntry& step(StepId id);
/// "S1".."S24"; throws std::invalid_argument listing the valid ids.
StepId parse_step_id(std::string_view name);
bool step_in_domain(StepId id, unsigned long p);

/// Checks every relation of the step at p; a failure names the first failing
/// sub-relation by index and label. Throws DomainError outside the domain.
CheckReport verify_proof_step(StepId id, unsigned long p);

/// Every step at every prime in `primes` that lies in its domain. Failures
/// only; the count of (step, p) pairs checked is in SweepOutcome::checked.
SweepOutcome sweep_proof_steps(std::span<const StepId> steps,
                               std::span<const unsigned long> primes, unsigned workers = 1);

}  // namespace trisum
