// Command-line front end: exact fractional-calculus operators, the catalog of
// closed-form minimizers, and the verification harness behind one binary.
//
// Exit codes: 0 all checks passed, 1 a verification check failed, 2 bad usage
// or invalid configuration.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fracvar/harness.hpp"
#include "fracvar/leitmann.hpp"
#include "fracvar/problems.hpp"
#include "fracvar/report.hpp"
#include "fracvar/serialization.hpp"
#include "fracvar/special_functions.hpp"

namespace fv = fracvar;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(*path, std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write '" + *path + "'");
  out << text;
}

// Inline JSON text or a path to a JSON file.
json load_json_argument(const std::string& value) {
  if (!value.empty() && (value.front() == '{' || value.front() == '[')) {
    return json::parse(value);
  }
  return json::parse(read_file(value));
}

fv::Coefficient coefficient_from_json(const json& j) {
  if (j.contains("samples")) {
    fv::SampledCoefficient sc{fv::sampled_function_from_json(j["samples"]), std::nullopt};
    if (j.contains("derivative")) sc.derivative = fv::sampled_function_from_json(j["derivative"]);
    return sc;
  }
  return fv::power_sum_from_json(j);
}

struct ProblemFlags {
  std::string problem;
  double alpha = 0.5;
  double c = 0.0;
  double xi = 0.0;
  std::string g_spec;
  int n = 1025;
  std::string config_path;

  CLI::Option* alpha_opt = nullptr;
  CLI::Option* c_opt = nullptr;
  CLI::Option* xi_opt = nullptr;
  CLI::Option* n_opt = nullptr;

  void attach(CLI::App* cmd, bool problem_required = true) {
    auto* p = cmd->add_option("--problem", problem, "problem id: p1, p2 or p3");
    if (problem_required) {
      p->check(CLI::IsMember({"p1", "p2", "p3"}));
    }
    alpha_opt = cmd->add_option("--alpha", alpha, "fractional order");
    c_opt = cmd->add_option("--c", c, "terminal constraint value (p1)");
    xi_opt = cmd->add_option("--xi", xi, "terminal constraint value (p2)");
    cmd->add_option("--g", g_spec, "weight g for p2: power-sum JSON inline or file path");
    n_opt = cmd->add_option("--n", n, "grid resolution")->check(CLI::Range(3, 1 << 22));
    cmd->add_option("--config", config_path, "JSON problem config; explicit flags override it");
  }

  fv::ProblemConfig build() const {
    fv::ProblemConfig config;
    if (!config_path.empty()) config = fv::problem_config_from_json(load_json_argument(config_path));
    if (!problem.empty()) {
      if (problem == "p1") config.kind = fv::ProblemConfig::Kind::kP1;
      else if (problem == "p2") config.kind = fv::ProblemConfig::Kind::kP2;
      else if (problem == "p3") config.kind = fv::ProblemConfig::Kind::kP3;
      else throw std::invalid_argument("unknown problem '" + problem + "'");
    } else if (config_path.empty()) {
      throw std::invalid_argument("either --problem or --config is required");
    }
    if (alpha_opt->count()) config.alpha = alpha;
    if (c_opt->count()) config.c = c;
    if (xi_opt->count()) config.xi = xi;
    if (n_opt->count()) config.n = n;
    if (!g_spec.empty()) config.g = coefficient_from_json(load_json_argument(g_spec));
    return config;
  }
};

int run_gamma(double z, const std::optional<std::string>& out) {
  const double value = fv::gamma(z);
  const double log_value = fv::ln_gamma(z);
  json j = {{"z", z}, {"gamma", value}, {"ln_gamma", log_value}};
  write_output(out, j.dump(2));
  return kExitPass;
}

int run_fracop(const std::string& op, double alpha, const std::string& input, bool numeric,
               int n, const std::optional<std::string>& out, const std::string& format) {
  json in;
  if (input.size() >= 4 && input.substr(input.size() - 4) == ".csv") {
    in = json{{"samples_csv", input}};
  } else {
    in = load_json_argument(input);
  }

  const bool is_integral = op == "integral";
  if (in.contains("terms") && !numeric) {
    const fv::PowerSum p = fv::power_sum_from_json(in);
    const fv::PowerSum result =
        is_integral ? fv::rl_integral(p, alpha) : fv::rl_derivative(p, alpha);
    write_output(out, fv::to_json(result).dump(2));
    return kExitPass;
  }

  fv::SampledFunction f = [&]() {
    if (in.contains("samples_csv")) return fv::sampled_function_from_csv(read_file(input));
    if (in.contains("grid")) return fv::sampled_function_from_json(in);
    // numeric operator on an exact input: sample it first
    return fv::sample(fv::power_sum_from_json(in), fv::Grid(0.0, 1.0, n));
  }();
  const fv::SampledFunction result =
      is_integral ? fv::rl_integral_num(f, alpha) : fv::rl_derivative_num(f, alpha).value;
  write_output(out, format == "csv" ? fv::to_csv(result) : fv::to_json(result).dump(2));
  return kExitPass;
}

json control_solution_json(double alpha, int n) {
  const auto sol = fv::p3_solution(alpha);
  const auto res = fv::check_control_system(alpha, fv::Curve(sol.u1), fv::Curve(sol.u2),
                                            fv::Curve(sol.y1), fv::Curve(sol.y2), n);
  return {{"problem", "p3"},
          {"alpha", alpha},
          {"controls", {{"u1", fv::to_json(sol.u1)}, {"u2", fv::to_json(sol.u2)}}},
          {"states", {{"y1", fv::to_json(sol.y1)}, {"y2", fv::to_json(sol.y2)}}},
          {"cost", fv::control_cost(fv::Curve(sol.u1), fv::Curve(sol.u2), n)},
          {"boundary_values", {2.0, 1.0}},
          {"residuals",
           {{"dynamics_y1", res.dynamics_y1},
            {"dynamics_y2", res.dynamics_y2},
            {"boundary_y1", res.boundary_y1},
            {"boundary_y2", res.boundary_y2}}}};
}

int run_solve(const ProblemFlags& flags, const std::optional<std::string>& out,
              const std::string& format) {
  const fv::ProblemConfig config = flags.build();
  if (config.kind == fv::ProblemConfig::Kind::kP3) {
    write_output(out, control_solution_json(config.alpha, config.n).dump(2));
    return kExitPass;
  }

  const fv::VariationalProblem prob = fv::make_problem(config);
  const fv::Candidate y = fv::make_solution(config);
  const double value = fv::evaluate(prob, y, config.n);
  const double residual = fv::check_constraint(prob, y, config.n);

  if (format == "csv") {
    write_output(out, fv::to_csv(fv::candidate_samples(y, fv::Grid(0.0, 1.0, config.n))));
    std::cerr << "functional_value = " << fv::format_float(value)
              << ", constraint_residual = " << fv::format_float(residual) << '\n';
    return kExitPass;
  }
  json j = fv::to_json(config);
  j["y"] = fv::to_json(y);
  j["functional_value"] = value;
  j["constraint_residual"] = residual;
  write_output(out, j.dump(2));
  return kExitPass;
}

fv::Transformation catalog_transformation(const fv::ProblemConfig& config) {
  if (config.kind == fv::ProblemConfig::Kind::kP1) {
    return fv::p1_transformation(config.c, config.alpha);
  }
  const fv::Coefficient g = config.g.value_or(fv::Coefficient(fv::PowerSum::constant(1.0)));
  const auto* gp = std::get_if<fv::PowerSum>(&g);
  if (!gp) throw std::invalid_argument("equivalence checks need g as a power sum");
  return fv::p2_transformation(*gp, config.xi, config.alpha);
}

int run_verify(const ProblemFlags& flags, const std::string& candidate_path, int max_k,
               std::vector<double> epsilons, double tol,
               const std::optional<std::string>& out) {
  const fv::ProblemConfig config = flags.build();
  if (epsilons.empty()) {
    epsilons.assign(std::begin(fv::kDefaultEpsilons), std::end(fv::kDefaultEpsilons));
  }

  std::vector<fv::VerificationReport> reports;
  if (config.kind == fv::ProblemConfig::Kind::kP3) {
    const auto sol = fv::p3_solution(config.alpha);
    const auto res = fv::check_control_system(config.alpha, fv::Curve(sol.u1), fv::Curve(sol.u2),
                                              fv::Curve(sol.y1), fv::Curve(sol.y2), config.n);
    fv::VerificationReport system_report;
    system_report.check = "control_system";
    system_report.max_gap = res.max();
    system_report.tolerance = tol;
    system_report.grid_n = config.n;
    system_report.pass = res.max() <= tol;
    system_report.details.push_back({{"dynamics_y1", res.dynamics_y1},
                                     {"dynamics_y2", res.dynamics_y2},
                                     {"boundary_y1", res.boundary_y1},
                                     {"boundary_y2", res.boundary_y2}});
    reports.push_back(system_report);
    reports.push_back(fv::control_minimality_scan(config.alpha, epsilons, config.n).report());
  } else {
    const fv::VariationalProblem prob = fv::make_problem(config);
    const fv::Candidate y = [&]() {
      if (candidate_path.empty()) return fv::make_solution(config);
      json cj = load_json_argument(candidate_path);
      if (cj.contains("y")) cj = cj["y"];  // accept a full solve output
      return fv::candidate_from_json(cj);
    }();

    fv::VerificationReport constraint_report;
    constraint_report.check = "constraint";
    constraint_report.max_gap = fv::check_constraint(prob, y, config.n);
    constraint_report.tolerance = tol;
    constraint_report.grid_n = config.n;
    constraint_report.pass = constraint_report.max_gap <= tol;
    reports.push_back(constraint_report);

    const fv::Transformation transform = catalog_transformation(config);
    reports.push_back(fv::verify_exact_differential(prob, transform, y, config.n));

    std::vector<fv::Candidate> candidates;
    candidates.push_back(y);
    for (int k = 1; k <= 4; ++k) {
      candidates.push_back(fv::perturb(y, (0.1 * k) * fv::make_perturbation(config.alpha, k).eta));
    }
    reports.push_back(fv::verify_constant_difference(prob, transform, candidates, config.n));

    reports.push_back(fv::minimality_scan(prob, y, max_k, epsilons, config.n, tol).report());
  }

  bool all_pass = true;
  std::string first_failing;
  json serialized = json::array();
  for (const auto& r : reports) {
    serialized.push_back(fv::to_json(r));
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.check
              << " (max_gap = " << fv::format_float(r.max_gap)
              << ", tolerance = " << fv::format_float(r.tolerance) << ")\n";
    if (!r.pass && all_pass) first_failing = r.check;
    all_pass = all_pass && r.pass;
  }
  if (out) write_output(out, json{{"pass", all_pass}, {"checks", serialized}}.dump(2));
  if (!all_pass) {
    std::cout << "first failing check: " << first_failing << '\n';
    return kExitCheckFailed;
  }
  return kExitPass;
}

int run_sweep(const ProblemFlags& flags, const std::vector<double>& alphas,
              const std::vector<int>& ns, const std::optional<std::string>& out,
              const std::string& format) {
  if (alphas.empty() || ns.empty()) {
    throw std::invalid_argument("sweep needs nonempty --alphas and --ns");
  }
  const fv::ProblemConfig config = flags.build();
  const fv::SweepTable table = fv::alpha_sweep(config, alphas, ns);
  write_output(out, format == "json" ? fv::to_json(table).dump(2) : fv::to_csv(table));

  bool any_ok = false;
  for (const auto& row : table.rows) any_ok = any_ok || row.status == "ok";
  return any_ok ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann-Liouville fractional operators and exact variational minimizers"};
  app.require_subcommand(1);

  std::optional<std::string> out;
  std::string format = "json";

  // gamma
  auto* gamma_cmd = app.add_subcommand("gamma", "evaluate the Gamma function");
  double z = 1.0;
  gamma_cmd->add_option("--z", z, "argument, z > 0")->required();

  // fracop
  auto* fracop_cmd = app.add_subcommand("fracop", "apply a fractional operator to a function");
  std::string op = "integral", input;
  double op_alpha = 0.5;
  bool numeric = false;
  int op_n = 1025;
  fracop_cmd->add_option("--op", op, "integral or derivative")
      ->check(CLI::IsMember({"integral", "derivative"}));
  fracop_cmd->add_option("--alpha", op_alpha, "operator order")->required();
  fracop_cmd->add_option("--input", input, "power-sum JSON, samples JSON, or samples CSV")
      ->required();
  fracop_cmd->add_flag("--numeric", numeric, "force the grid discretization");
  fracop_cmd->add_option("--n", op_n, "grid resolution for --numeric")->check(CLI::Range(3, 1 << 22));

  // solve / verify / sweep share the problem flags
  auto* solve_cmd = app.add_subcommand("solve", "emit the closed-form global minimizer");
  ProblemFlags solve_flags;
  solve_flags.attach(solve_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "run the verification checks");
  ProblemFlags verify_flags;
  verify_flags.attach(verify_cmd);
  std::string candidate_path;
  int max_k = 6;
  std::vector<double> epsilons;
  double tol = 1e-9;
  verify_cmd->add_option("--candidate", candidate_path, "candidate JSON to verify instead");
  verify_cmd->add_option("--k", max_k, "number of perturbation families")->check(CLI::Range(1, 64));
  verify_cmd->add_option("--eps", epsilons, "epsilon grid")->delimiter(',');
  verify_cmd->add_option("--tol", tol, "tolerance for the exact-path checks")
      ->check(CLI::PositiveNumber);

  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate exact vs numeric over (alpha, n)");
  ProblemFlags sweep_flags;
  sweep_flags.attach(sweep_cmd);
  std::vector<double> alphas;
  std::vector<int> ns;
  sweep_cmd->add_option("--alphas", alphas, "alpha values")->delimiter(',');
  sweep_cmd->add_option("--ns", ns, "grid resolutions")->delimiter(',');

  for (auto* cmd : {gamma_cmd, fracop_cmd, solve_cmd, verify_cmd, sweep_cmd}) {
    cmd->add_option("--out", out, "output file (stdout when absent)");
    cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse diagnostic
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (gamma_cmd->parsed()) return run_gamma(z, out);
    if (fracop_cmd->parsed()) return run_fracop(op, op_alpha, input, numeric, op_n, out, format);
    if (solve_cmd->parsed()) return run_solve(solve_flags, out, format);
    if (verify_cmd->parsed())
      return run_verify(verify_flags, candidate_path, max_k, epsilons, tol, out);
    if (sweep_cmd->parsed()) return run_sweep(sweep_flags, alphas, ns, out, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
