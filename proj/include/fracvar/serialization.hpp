#pragma once

#include <string>

#include <json.hpp>

#include "fracvar/grid.hpp"
#include "fracvar/harness.hpp"
#include "fracvar/power_sum.hpp"
#include "fracvar/problems.hpp"

namespace fracvar {

/// Shortest-round-trip decimal with up to 17 significant digits; the one float
/// format used in CSV output so reruns are byte-identical.
std::string format_float(double v);

// {"a": base, "terms": [[coef, exponent], ...]}
nlohmann::json to_json(const PowerSum& p);
PowerSum power_sum_from_json(const nlohmann::json& j);

// {"grid": {"a":., "b":., "n":.}, "values": [...]}
nlohmann::json to_json(const SampledFunction& f);
SampledFunction sampled_function_from_json(const nlohmann::json& j);

/// CSV with an "x,value" header row.
std::string to_csv(const SampledFunction& f);
SampledFunction sampled_function_from_csv(const std::string& text);

// One of {"power_sum": ...}, {"samples": ...}, {"product_form": {...}}.
nlohmann::json to_json(const Candidate& y);
Candidate candidate_from_json(const nlohmann::json& j);

// {"problem": "p1"|"p2"|"p3", "alpha": r, "c"|"xi": r, "g": power-sum JSON or
//  {"samples": ..., "derivative": ...}, "n": int}
ProblemConfig problem_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProblemConfig& config);

std::string to_csv(const SweepTable& table);
nlohmann::json to_json(const SweepTable& table);

}  // namespace fracvar
