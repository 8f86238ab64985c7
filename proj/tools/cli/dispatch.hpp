#pragma once

// Command-line front end. Parsing, validation and rendering live here; the
// computations are reached through a Backend so tests can substitute one.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace trisum::cli {

/// What a backend call produced. status mirrors trisum_status (0 = ok).
struct Reply {
  int status = 0;
  std::string error;
  std::vector<std::string> items;
};

struct VerifyRequest {
  std::string family;
  std::string id;
  unsigned long max_n = 0;
  unsigned long min_p = 0;
  std::vector<unsigned long> primes;
  std::vector<long> bounds;
  unsigned long max_d = 0;
  unsigned trials = 10;
  std::uint64_t seed = 1;
};

struct SweepRequest {
  std::string conjecture;
  unsigned r = 0;
  unsigned from = 1;
  unsigned to = 1;
  std::string output;
  std::string checkpoint;
  bool resume = false;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual void set_workers(unsigned workers) = 0;
  /// Space-separated valid ids for a family ("theorem", "lemma", "identity",
  /// "recurrence", "step", "conjecture", "sequence").
  virtual std::string valid_ids(const std::string& family) = 0;
  virtual Reply sequence(const std::string& name, unsigned r, unsigned from, unsigned count) = 0;
  virtual Reply verify(const VerifyRequest& request) = 0;
  virtual Reply explore(const SweepRequest& request) = 0;
  virtual Reply minimal_multiplier(unsigned r, unsigned max_n) = 0;
};

/// Backend that calls the shared library.
std::unique_ptr<Backend> make_library_backend();

enum ExitCode : int { kAllPass = 0, kSomeFail = 1, kUsageOrError = 2 };

/// Parses args (without the program name), runs the command and writes
/// results to out and prose to err. Never throws.
int dispatch(const std::vector<std::string>& args, Backend& backend, std::ostream& out,
             std::ostream& err);

/// "3,5,7" or "3..97" (inclusive). nullopt on malformed input.
struct PrimeSelection {
  std::vector<unsigned long> list;
  unsigned long lo = 0;
  unsigned long hi = 0;
  bool is_range = false;
};
std::optional<PrimeSelection> parse_prime_selection(const std::string& text);

}  // namespace trisum::cli
