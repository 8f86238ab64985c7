#pragma once

// Numerical exploration of the open refinements:
//
//   C1  sum_{k<n} (2k+1) R_k^2       == n^2 (mod 16n)
//   C2  sum_{k<n} (2k+1) W_k^2       == n^2 (mod 8n)
//   C3  a_r sum_{k<n} (2k+1) R_{k,r}^2 == 0 (mod n), a_r = ((2r+1)!!)^2
//
// Sweeps persist one JSON object per line and a checkpoint next to it, so a
// killed run can be resumed without duplicating records.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "exactnum.hpp"
#include "report.hpp"
#include "sequences.hpp"

namespace trisum {

struct ConjectureVerdict {
  bool holds = false;
  std::string sum;        // the quantity tested, decimal or num/den
  std::string modulus;
  std::string remainder;  // "non-integral" when the quantity is not an integer
};

/// A conjecture over n >= 1 about the weighted square sum of one sequence.
/// Built-ins are C1..C3; tests and callers may supply their own.
struct ConjectureSpec {
  std::string name;
  bool takes_r = false;
  std::function<SequenceId(unsigned r)> sequence;
  std::function<ConjectureVerdict(const ExactRational& square_sum, unsigned n, unsigned r)> test;
};

enum class ConjectureId { C1, C2, C3 };

ConjectureSpec builtin_conjecture(ConjectureId id);
/// "C1" | "C2" | "C3"; throws std::invalid_argument listing the valid ids.
ConjectureId parse_conjecture_id(std::string_view name);

struct SweepRecord {
  std::string check;
  unsigned n = 0;
  std::optional<unsigned> r;
  bool pass = false;
  ConjectureVerdict witness;
  std::string ts;  // ISO-8601 UTC

  nlohmann::json to_json() const;
  static SweepRecord from_json(const nlohmann::json& j);
  /// (check, n, r): one record per key.
  std::tuple<std::string, unsigned, long> key() const;
};

/// In-memory evaluation for n in [from, to]; no persistence.
std::vector<SweepRecord> explore(const ConjectureSpec& spec, unsigned from, unsigned to,
                                 unsigned r = 0, unsigned workers = 1);

/// Least a >= 1 with a * sum_{k<n} (2k+1) R_{k,r}^2 in nZ for all n <= max_n.
/// r = 0 uses R itself.
BigInt minimal_multiplier(unsigned r, unsigned max_n, unsigned workers = 1);

struct SweepConfig {
  ConjectureSpec conjecture;
  unsigned from = 1;
  unsigned to = 1;
  unsigned r = 0;
  std::filesystem::path output;
  /// Defaults to output + ".ckpt".
  std::filesystem::path checkpoint;
  unsigned workers = 1;
  unsigned batch = 64;
  bool resume = false;
  /// Stop after writing this many new records, leaving the sweep unfinished.
  /// Used to exercise interruption in tests.
  std::optional<std::size_t> stop_after;
};

/// SHA-256 of the canonical encoding of (check, from, to, r).
std::string config_fingerprint(const SweepConfig& config);

struct SweepResult {
  /// Pass iff every record on file for the configured range passes.
  CheckReport summary;
  std::size_t new_records = 0;
  std::size_t total_records = 0;
  bool complete = false;
  std::vector<SweepRecord> failures;
};

/// Runs (or resumes) the sweep. Throws CheckpointMismatch when resuming with
/// a checkpoint written for a different configuration, IoError when the
/// output cannot be written, std::invalid_argument for an empty range.
SweepResult run_sweep(SweepConfig config);

/// Reads every complete record of a JSONL file. A trailing partial line is
/// ignored; any other malformed line throws IoError.
std::vector<SweepRecord> read_records(const std::filesystem::path& path);

}  // namespace trisum
