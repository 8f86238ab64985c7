#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "exactnum.hpp"

namespace trisum {

enum class CheckStatus { Pass, Fail, Error };

std::string_view to_string(CheckStatus s);

struct Witness {
  std::string lhs;
  std::string rhs;
  std::optional<Valuation> difference_valuation;
  std::vector<std::pair<std::string, std::string>> extra;

  bool empty() const { return lhs.empty() && rhs.empty() && extra.empty(); }
};

/// Outcome of one verification. A failing report always carries a witness.
struct CheckReport {
  std::string check;
  std::vector<std::pair<std::string, long long>> params;
  CheckStatus status = CheckStatus::Pass;
  Witness witness;
  std::string detail;
  double elapsed_ms = 0.0;

  bool passed() const { return status == CheckStatus::Pass; }

  static CheckReport pass(std::string check, std::vector<std::pair<std::string, long long>> params,
                          Witness witness = {});
  static CheckReport fail(std::string check, std::vector<std::pair<std::string, long long>> params,
                          Witness witness, std::string detail = {});
  static CheckReport error(std::string check, std::vector<std::pair<std::string, long long>> params,
                           std::string detail);
};

/// Witness for "lhs ~ rhs": both sides plus v_p(lhs - rhs) when p is given.
Witness relation_witness(const ExactRational& lhs, const ExactRational& rhs,
                         std::optional<unsigned long> p = std::nullopt);
Witness relation_witness(const BigInt& lhs, const BigInt& rhs,
                         std::optional<unsigned long> p = std::nullopt);

nlohmann::json to_json(const CheckReport& r);
CheckReport report_from_json(const nlohmann::json& j);

/// Stamps elapsed wall time onto the report returned by fn().
template <typename Fn>
CheckReport timed(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport r = fn();
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Aggregate of an exhaustive sweep: how many cases ran and which failed.
struct SweepOutcome {
  std::string check;
  std::size_t checked = 0;
  std::vector<CheckReport> failures;

  bool passed() const { return failures.empty(); }
  /// One summary report; a failing summary carries the first failure's witness.
  CheckReport summary(std::vector<std::pair<std::string, long long>> params) const;
};

}  // namespace trisum
