#include "fracvar/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace fracvar {

namespace {

double required_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw std::invalid_argument(std::string("missing numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

}  // namespace

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json to_json(const PowerSum& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : p.terms()) terms.push_back({t.coef, t.exponent});
  return {{"a", p.base()}, {"terms", terms}};
}

PowerSum power_sum_from_json(const nlohmann::json& j) {
  const double base = required_number(j, "a");
  if (!j.contains("terms") || !j["terms"].is_array()) {
    throw std::invalid_argument("power sum JSON needs a 'terms' array");
  }
  std::vector<PowerTerm> terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_array() || t.size() != 2) {
      throw std::invalid_argument("each power-sum term must be [coef, exponent]");
    }
    terms.push_back({t[0].get<double>(), t[1].get<double>()});
  }
  return PowerSum(base, std::move(terms));
}

nlohmann::json to_json(const SampledFunction& f) {
  return {{"grid", {{"a", f.grid.a}, {"b", f.grid.b}, {"n", f.grid.n}}},
          {"values", std::vector<double>(f.values.begin(), f.values.end())}};
}

SampledFunction sampled_function_from_json(const nlohmann::json& j) {
  if (!j.contains("grid") || !j.contains("values")) {
    throw std::invalid_argument("sampled function JSON needs 'grid' and 'values'");
  }
  const auto& gj = j["grid"];
  const Grid grid(required_number(gj, "a"), required_number(gj, "b"),
                  static_cast<int>(gj.at("n").get<long long>()));
  const auto vals = j["values"].get<std::vector<double>>();
  Eigen::ArrayXd v = Eigen::Map<const Eigen::ArrayXd>(vals.data(), vals.size());
  return SampledFunction(grid, std::move(v));
}

std::string to_csv(const SampledFunction& f) {
  std::ostringstream out;
  out << "x,value\n";
  for (int j = 0; j < f.grid.n; ++j) {
    out << format_float(f.grid.node(j)) << ',' << format_float(f.values[j]) << '\n';
  }
  return out.str();
}

SampledFunction sampled_function_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  std::vector<double> xs, vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("CSV row without a comma");
    xs.push_back(std::stod(line.substr(0, comma)));
    vs.push_back(std::stod(line.substr(comma + 1)));
  }
  if (xs.size() < 3) throw std::invalid_argument("CSV needs at least 3 sample rows");
  const int n = static_cast<int>(xs.size());
  const Grid grid(xs.front(), xs.back(), n);
  for (int j = 0; j < n; ++j) {
    if (std::abs(xs[j] - grid.node(j)) > 1e-9 * std::max(1.0, std::abs(grid.b))) {
      throw std::invalid_argument("CSV abscissae are not a uniform grid");
    }
  }
  Eigen::ArrayXd v = Eigen::Map<const Eigen::ArrayXd>(vs.data(), n);
  return SampledFunction(grid, std::move(v));
}

nlohmann::json to_json(const Candidate& y) {
  if (const auto* p = std::get_if<PowerSum>(&y)) return {{"power_sum", to_json(*p)}};
  if (const auto* s = std::get_if<SampledFunction>(&y)) return {{"samples", to_json(*s)}};
  const auto& pf = std::get<ProductFormCandidate>(y);
  return {{"product_form",
           {{"w", to_json(pf.w)},
            {"g", to_json(pf.g)},
            {"alpha", pf.alpha},
            {"y_extra", to_json(pf.y_extra)}}}};
}

Candidate candidate_from_json(const nlohmann::json& j) {
  if (j.contains("power_sum")) return power_sum_from_json(j["power_sum"]);
  if (j.contains("samples")) return sampled_function_from_json(j["samples"]);
  if (j.contains("product_form")) {
    const auto& pj = j["product_form"];
    ProductFormCandidate pf;
    pf.w = power_sum_from_json(pj.at("w"));
    pf.g = power_sum_from_json(pj.at("g"));
    pf.alpha = required_number(pj, "alpha");
    pf.y_extra = pj.contains("y_extra") ? power_sum_from_json(pj["y_extra"])
                                        : PowerSum::zero(pf.w.base());
    return pf;
  }
  throw std::invalid_argument("candidate JSON needs 'power_sum', 'samples' or 'product_form'");
}

ProblemConfig problem_config_from_json(const nlohmann::json& j) {
  ProblemConfig config;
  const std::string problem = j.at("problem").get<std::string>();
  if (problem == "p1") {
    config.kind = ProblemConfig::Kind::kP1;
  } else if (problem == "p2") {
    config.kind = ProblemConfig::Kind::kP2;
  } else if (problem == "p3") {
    config.kind = ProblemConfig::Kind::kP3;
  } else {
    throw std::invalid_argument("unknown problem '" + problem + "'");
  }
  config.alpha = required_number(j, "alpha");
  if (j.contains("c")) config.c = j["c"].get<double>();
  if (j.contains("xi")) config.xi = j["xi"].get<double>();
  if (j.contains("n")) config.n = static_cast<int>(j["n"].get<long long>());
  if (j.contains("g")) {
    const auto& gj = j["g"];
    if (gj.contains("samples")) {
      SampledCoefficient sc{sampled_function_from_json(gj["samples"]), std::nullopt};
      if (gj.contains("derivative")) sc.derivative = sampled_function_from_json(gj["derivative"]);
      config.g = std::move(sc);
    } else {
      config.g = power_sum_from_json(gj);
    }
  }
  return config;
}

nlohmann::json to_json(const ProblemConfig& config) {
  nlohmann::json j;
  switch (config.kind) {
    case ProblemConfig::Kind::kP1:
      j["problem"] = "p1";
      j["c"] = config.c;
      break;
    case ProblemConfig::Kind::kP2:
      j["problem"] = "p2";
      j["xi"] = config.xi;
      break;
    case ProblemConfig::Kind::kP3:
      j["problem"] = "p3";
      break;
  }
  j["alpha"] = config.alpha;
  j["n"] = config.n;
  if (config.g) {
    if (const auto* p = std::get_if<PowerSum>(&*config.g)) {
      j["g"] = to_json(*p);
    } else {
      const auto& sc = std::get<SampledCoefficient>(*config.g);
      j["g"] = {{"samples", to_json(sc.values)}};
      if (sc.derivative) j["g"]["derivative"] = to_json(*sc.derivative);
    }
  }
  return j;
}

std::string to_csv(const SweepTable& table) {
  std::ostringstream out;
  out << "alpha,n,j_exact,j_numeric,constraint_residual,convergence_order,status\n";
  for (const auto& r : table.rows) {
    out << format_float(r.alpha) << ',' << r.n << ',' << format_float(r.j_exact) << ','
        << format_float(r.j_numeric) << ',' << format_float(r.constraint_residual) << ','
        << format_float(r.convergence_order) << ',' << r.status << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const SweepTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"alpha", r.alpha},
                    {"n", r.n},
                    {"j_exact", r.j_exact},
                    {"j_numeric", r.j_numeric},
                    {"constraint_residual", r.constraint_residual},
                    {"convergence_order", r.convergence_order},
                    {"status", r.status}});
  }
  return {{"rows", rows}};
}

}  // namespace fracvar
