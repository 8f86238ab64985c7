#pragma once

// Four-binomial divisibility
//
//   C(2k,k) C(2m-2k,m-k)  |  C(2n,n) C(n,k) C(m,k) C(k,m-n),   0 <= k <= n <= m <= 2n,
//
// together with the per-prime valuation route used to prove it: by Legendre,
// the p-adic order of the quotient is sum_j F(p^j) where F(d) is the floor
// combination below, so it suffices that F(d) >= 0 for every d >= 1.

#include <string>

#include "exactnum.hpp"
#include "report.hpp"

namespace trisum {

struct TripleKNM {
  unsigned k = 0;
  unsigned n = 0;
  unsigned m = 0;

  bool valid() const { return k <= n && n <= m && m <= 2 * n; }
  /// Throws std::invalid_argument unless valid().
  void require_valid() const;
  std::string to_string() const;
};

struct FloorSides {
  long lhs = 0;
  long rhs = 0;
};

/// floor(2n/d)+floor(m/d)+floor((m-k)/d)+floor(k/d) against
/// floor((n-k)/d)+floor((k-m+n)/d)+floor((2m-2k)/d)+floor(2k/d)+floor(n/d)+floor((m-n)/d).
FloorSides floor_inequality_sides(const TripleKNM& t, unsigned long d);
bool floor_inequality_holds(const TripleKNM& t, unsigned long d);

/// ord_p of C(2n,n)C(n,k)C(m,k)C(k,m-n) / (C(2k,k)C(2m-2k,m-k)) via factorial orders.
long ratio_valuation(const TripleKNM& t, unsigned long p);

/// Exact big-integer division with remainder.
bool divisibility_lemma_holds(const TripleKNM& t);
/// ratio_valuation >= 0 at every prime p <= 2n.
bool divisibility_by_valuations(const TripleKNM& t);

/// floor(2n/d) + floor(k/d) >= floor(n/d) + floor((n-k)/d) + floor(2k/d), 0 <= k <= n.
bool bober_inequality_holds(unsigned long n, unsigned long k, unsigned long d);

/// Which branch of the three-way case split on floor((2m-2k)/d) and floor(m/d)
/// applies to (t, d), and whether the facts that branch relies on hold.
enum class FloorCase { EvenSplit, OddSplitWithSlack, OddSplitTight, Uncovered };

struct CaseProbe {
  FloorCase which = FloorCase::Uncovered;
  bool facts_hold = false;
};

CaseProbe probe_floor_cases(const TripleKNM& t, unsigned long d);

// Exhaustive sweeps. Each returns every failing case with its witness.
SweepOutcome sweep_divisibility(unsigned max_n, unsigned workers = 1);
SweepOutcome sweep_floor_inequality(unsigned max_n, unsigned long max_d, unsigned workers = 1);
SweepOutcome sweep_bober(unsigned max_n, unsigned long max_d);
SweepOutcome sweep_floor_cases(unsigned max_n, unsigned long max_d);

}  // namespace trisum
