#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#ifndef TRISUM_ORACLE_PATH
#error "TRISUM_ORACLE_PATH must point at tests/data/oracle.json"
#endif

namespace trisum::testing {

/// Reference values computed independently (tests/oracle/generate_oracle.py).
inline const nlohmann::json& oracle() {
  static const nlohmann::json data = [] {
    std::ifstream in(TRISUM_ORACLE_PATH);
    if (!in) throw std::runtime_error("cannot open " + std::string(TRISUM_ORACLE_PATH));
    return nlohmann::json::parse(in);
  }();
  return data;
}

/// Integer or rational oracle entry as text ("num" or "num/den").
inline std::string oracle_text(const nlohmann::json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace trisum::testing
