#include "report.hpp"

#include <stdexcept>

namespace trisum {

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Error: return "error";
  }
  return "error";
}

CheckReport CheckReport::pass(std::string check,
                              std::vector<std::pair<std::string, long long>> params,
                              Witness witness) {
  CheckReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.status = CheckStatus::Pass;
  r.witness = std::move(witness);
  return r;
}

CheckReport CheckReport::fail(std::string check,
                              std::vector<std::pair<std::string, long long>> params,
                              Witness witness, std::string detail) {
  if (witness.empty()) throw std::logic_error("CheckReport::fail without a witness");
  CheckReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.status = CheckStatus::Fail;
  r.witness = std::move(witness);
  r.detail = std::move(detail);
  return r;
}

CheckReport CheckReport::error(std::string check,
                               std::vector<std::pair<std::string, long long>> params,
                               std::string detail) {
  CheckReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.status = CheckStatus::Error;
  r.detail = std::move(detail);
  return r;
}

Witness relation_witness(const ExactRational& lhs, const ExactRational& rhs,
                         std::optional<unsigned long> p) {
  Witness w;
  w.lhs = lhs.get_den() == 1 ? to_string(lhs.get_num()) : to_string(lhs);
  w.rhs = rhs.get_den() == 1 ? to_string(rhs.get_num()) : to_string(rhs);
  if (p) w.difference_valuation = valuation(ExactRational(lhs - rhs), *p);
  return w;
}

Witness relation_witness(const BigInt& lhs, const BigInt& rhs, std::optional<unsigned long> p) {
  Witness w;
  w.lhs = to_string(lhs);
  w.rhs = to_string(rhs);
  if (p) w.difference_valuation = valuation(BigInt(lhs - rhs), *p);
  return w;
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  nlohmann::json witness = nlohmann::json::object();
  if (!r.witness.lhs.empty()) witness["lhs"] = r.witness.lhs;
  if (!r.witness.rhs.empty()) witness["rhs"] = r.witness.rhs;
  if (r.witness.difference_valuation) {
    witness["valuation"] = r.witness.difference_valuation->to_string();
  }
  for (const auto& [k, v] : r.witness.extra) witness[k] = v;
  nlohmann::json out = {
      {"check", r.check},
      {"params", params},
      {"status", std::string(to_string(r.status))},
      {"witness", witness},
      {"elapsed_ms", r.elapsed_ms},
  };
  if (!r.detail.empty()) out["detail"] = r.detail;
  return out;
}

CheckReport report_from_json(const nlohmann::json& j) {
  CheckReport r;
  r.check = j.at("check").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) r.params.emplace_back(k, v.get<long long>());
  const auto status = j.at("status").get<std::string>();
  if (status == "pass") {
    r.status = CheckStatus::Pass;
  } else if (status == "fail") {
    r.status = CheckStatus::Fail;
  } else if (status == "error") {
    r.status = CheckStatus::Error;
  } else {
    throw std::invalid_argument("report_from_json: unknown status " + status);
  }
  for (const auto& [k, v] : j.at("witness").items()) {
    if (k == "lhs") {
      r.witness.lhs = v.get<std::string>();
    } else if (k == "rhs") {
      r.witness.rhs = v.get<std::string>();
    } else if (k == "valuation") {
      const auto s = v.get<std::string>();
      r.witness.difference_valuation =
          s == "inf" ? Valuation::infinite() : Valuation(std::stol(s));
    } else {
      r.witness.extra.emplace_back(k, v.get<std::string>());
    }
  }
  if (j.contains("detail")) r.detail = j.at("detail").get<std::string>();
  r.elapsed_ms = j.value("elapsed_ms", 0.0);
  return r;
}

CheckReport SweepOutcome::summary(std::vector<std::pair<std::string, long long>> params) const {
  Witness counts;
  counts.extra = {{"checked", std::to_string(checked)},
                  {"failures", std::to_string(failures.size())}};
  if (failures.empty()) return CheckReport::pass(check, std::move(params), std::move(counts));
  Witness w = failures.front().witness;
  w.extra.insert(w.extra.begin(), counts.extra.begin(), counts.extra.end());
  std::string detail = "first failure";
  for (const auto& [k, v] : failures.front().params) detail += " " + k + "=" + std::to_string(v);
  if (!failures.front().detail.empty()) detail += ": " + failures.front().detail;
  return CheckReport::fail(check, std::move(params), std::move(w), std::move(detail));
}

}  // namespace trisum
