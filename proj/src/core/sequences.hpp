#pragma once

// Exact values of the sequences built from C(n+k,2k)C(2k,k):
//
//   R_n      = sum_k C(n+k,2k) C(2k,k) / (2k-1)
//   W_n      = sum_k C(n+k,2k) C(2k,k) * 3 / (2k-3)
//   R_{n,r}  = sum_k C(n+k,2k) C(2k,k) / (2k-2r-1)      (rational for r >= 1)
//   X_n      = C(2n,n) sum_{m=n}^{2n} sum_{k=0}^{n} C(n,k)C(m,k)C(k,m-n) / ((2k-1)(2m-2k-1))
//   Z_n      = same double sum with 81 / ((2k-3)(2m-2k-3))   (Z_n = 9 Y_n)
//
// Integer-valued sequences are summed exactly and converted with a hard
// integrality assertion (ArithmeticError).

#include <string>
#include <string_view>
#include <vector>

#include "exactnum.hpp"

namespace trisum {

enum class SequenceKind { R, W, RGeneral, X, Z };

struct SequenceId {
  SequenceKind kind = SequenceKind::R;
  unsigned r = 0;  // only meaningful for RGeneral

  static SequenceId R() { return {SequenceKind::R, 0}; }
  static SequenceId W() { return {SequenceKind::W, 0}; }
  static SequenceId RGeneral(unsigned r) { return {SequenceKind::RGeneral, r}; }
  static SequenceId X() { return {SequenceKind::X, 0}; }
  static SequenceId Z() { return {SequenceKind::Z, 0}; }

  /// Accepts "R", "W", "Rg" (with r), "X", "Z". Throws std::invalid_argument.
  static SequenceId parse(std::string_view name, unsigned r = 0);
  std::string name() const;

  friend bool operator==(const SequenceId&, const SequenceId&) = default;
};

/// C(n+k, 2k) C(2k, k), the weight shared by R, W and R_{n,r}.
BigInt central_weight(unsigned n, unsigned k);

BigInt eval_R(unsigned n);
BigInt eval_W(unsigned n);
ExactRational eval_R_general(unsigned n, unsigned r);
/// Memoized per process; safe for concurrent callers.
BigInt eval_X(unsigned n);
/// Memoized per process; safe for concurrent callers.
BigInt eval_Z(unsigned n);
/// Z_n / 9, with an exact-divisibility assertion.
BigInt eval_Y(unsigned n);

ExactRational eval(SequenceId id, unsigned n);

/// Values for n = 0 .. count-1, computed on `workers` threads (0 = default).
std::vector<ExactRational> eval_prefix(SequenceId id, unsigned count, unsigned workers = 1);

/// sum_{k=0}^{n-1} (2k+1) seq_k^2. Throws std::invalid_argument for n = 0.
ExactRational weighted_square_sum(SequenceId id, unsigned n);

/// Entry n holds weighted_square_sum(id, n) for n = 0 .. max_n (entry 0 is the
/// empty sum). One pass over the sequence.
std::vector<ExactRational> weighted_square_prefix(SequenceId id, unsigned max_n,
                                                  unsigned workers = 1);

}  // namespace trisum
