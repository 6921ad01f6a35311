#pragma once

#include <string>

#include <json.hpp>

namespace fracvar {

/// Structured pass/fail record shared by the verification checks and scans.
/// grid_n = 0 marks a purely exact-path check.
struct VerificationReport {
  std::string check;
  bool pass = false;
  double max_gap = 0.0;
  double tolerance = 0.0;
  int grid_n = 0;
  nlohmann::json details = nlohmann::json::array();
};

inline nlohmann::json to_json(const VerificationReport& r) {
  return {{"check", r.check},   {"pass", r.pass},       {"max_gap", r.max_gap},
          {"tolerance", r.tolerance}, {"grid_n", r.grid_n}, {"details", r.details}};
}

}  // namespace fracvar
