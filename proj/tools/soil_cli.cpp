// soil: SOIL variable-importance scores from the command line.
//
//   soil importance --response y data.csv         per-variable scores
//   soil simulate --example s1 --reps 100         replicated scenario study
//   soil cross-examine --response y data.csv      guided-simulation check
//
// Every run is reproducible: the same invocation with the same --seed writes
// byte-identical report files. SOIL_THREADS caps the worker count (0 = auto).

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "soil/soil.hpp"

namespace {

struct Options {
  std::string command;
  std::string input_path;
  std::string response_column;
  std::string task = "regression";
  std::vector<std::string> methods{"arm", "bic-p"};
  std::vector<std::string> penalties{"lasso", "scad", "mcp"};
  double psi = 0.5;
  int splits = 100;
  int lambda_count = 100;
  std::optional<double> threshold;
  std::uint64_t seed = 0;
  std::string output_path;
  std::string format = "json";

  // simulate
  std::string example;
  int reps = 0;
  std::optional<double> rho;
  std::optional<double> sigma2;
  std::optional<int> n_override;
  std::vector<double> beta;  // custom scenario: true coefficient vector
  std::string addon = "none";
  double fiducial_gamma = 1.0;

  // cross-examine
  int top_m = 2;
  std::string base_method = "arm";
};

soil::Task parse_task(const std::string& name) {
  if (name == "regression") return soil::Task::regression;
  if (name == "classification") return soil::Task::classification;
  soil::fail(soil::Errc::config_invalid, "unknown task '" + name + "'");
}

std::vector<soil::WeightingMethod> parse_methods(const std::vector<std::string>& names) {
  std::vector<soil::WeightingMethod> out;
  for (const auto& name : names) out.push_back(soil::method_from_name(name));
  if (out.empty()) soil::fail(soil::Errc::config_invalid, "no weighting method given");
  return out;
}

soil::CandidateSet build_candidates(const soil::Dataset& data, const Options& opt) {
  const int cap = static_cast<int>(data.n()) / 2 - 2;
  if (data.p() <= 10) {
    const soil::CandidateSet sets[] = {soil::all_subsets(static_cast<int>(data.p()))};
    return soil::merge_sets(sets, cap);
  }
  const std::vector<double> grid = soil::default_lambda_grid(data, opt.lambda_count);
  std::vector<soil::CandidateSet> sets;
  for (const auto& name : opt.penalties) {
    soil::PenaltySpec spec;
    switch (soil::penalty_from_name(name)) {
      case soil::PenaltyKind::lasso: spec = soil::PenaltySpec::lasso(grid); break;
      case soil::PenaltyKind::scad: spec = soil::PenaltySpec::scad(grid); break;
      case soil::PenaltyKind::mcp: spec = soil::PenaltySpec::mcp(grid); break;
    }
    sets.push_back(soil::extract_supports(soil::penalized_path(data, spec),
                                          static_cast<int>(data.p())));
  }
  return soil::merge_sets(sets, cap);
}

soil::json options_json(const Options& opt) {
  soil::json cfg;
  cfg["command"] = opt.command;
  if (!opt.input_path.empty()) cfg["input"] = opt.input_path;
  if (!opt.response_column.empty()) cfg["response"] = opt.response_column;
  cfg["task"] = opt.task;
  cfg["methods"] = opt.methods;
  cfg["penalties"] = opt.penalties;
  cfg["psi"] = opt.psi;
  cfg["splits"] = opt.splits;
  cfg["lambda_count"] = opt.lambda_count;
  if (opt.threshold) cfg["threshold"] = *opt.threshold;
  if (!opt.example.empty()) cfg["example"] = opt.example;
  if (opt.reps > 0) cfg["replications"] = opt.reps;
  if (opt.rho) cfg["rho"] = *opt.rho;
  if (opt.sigma2) cfg["sigma2"] = *opt.sigma2;
  if (opt.n_override) cfg["n"] = *opt.n_override;
  if (!opt.beta.empty()) {
    cfg["beta"] = opt.beta;
    cfg["addon"] = opt.addon;
  }
  if (opt.command == "cross-examine") {
    cfg["top_m"] = opt.top_m;
    cfg["base_method"] = opt.base_method;
  }
  return cfg;
}

std::string default_output(const Options& opt) {
  return "soil_report." + std::string(opt.format == "csv" ? "csv" : "json");
}

void print_table(const soil::ImportanceTable& table) {
  // rows ordered by the first method's ranking
  soil::ImportanceVector first{table.values.front(), table.names};
  const std::vector<int> order = soil::rank_variables(first);
  std::printf("%-16s", "variable");
  for (const auto m : table.methods) std::printf("  %10s", soil::method_name(m));
  std::printf("\n");
  for (const int j : order) {
    std::printf("%-16s", table.names[static_cast<std::size_t>(j)].c_str());
    for (std::size_t m = 0; m < table.methods.size(); ++m)
      std::printf("  %10.4f", table.values[m][j]);
    std::printf("\n");
  }
}

void emit_report(const Options& opt, const soil::ImportanceTable& table,
                 const soil::json& selection, const std::vector<Eigen::VectorXd>* stderrs,
                 const soil::StudyResult* study) {
  const std::string path = opt.output_path.empty() ? default_output(opt) : opt.output_path;
  if (opt.format == "csv") {
    soil::write_text(path, soil::csv_report(table, stderrs));
  } else {
    soil::json report = study ? soil::study_report(opt.seed, options_json(opt), *study)
                              : soil::importance_report(opt.seed, options_json(opt), table, selection);
    soil::write_json_report(path, report);
  }
  std::printf("report written to %s\n", path.c_str());
}

int run_importance(const Options& opt) {
  const soil::Dataset data =
      soil::load_dataset(opt.input_path, opt.response_column, parse_task(opt.task));
  const soil::CandidateSet cands = build_candidates(data, opt);
  const auto methods = parse_methods(opt.methods);

  soil::MethodConfig mcfg;
  mcfg.psi = opt.psi;
  mcfg.arm_splits = opt.splits;
  mcfg.lambda_count = opt.lambda_count;
  mcfg.fiducial_gamma = opt.fiducial_gamma;

  soil::ImportanceTable table;
  table.names = data.column_names();
  table.methods = methods;
  soil::json selection = soil::json::array();
  for (std::size_t m = 0; m < methods.size(); ++m) {
    const Eigen::VectorXd w = soil::compute_weights(
        methods[m], data, cands, mcfg, soil::derive_seed(opt.seed, 0, m));
    table.values.push_back(soil::soil(w, cands).s);
    if (opt.threshold) {
      const soil::ImportanceVector imp{table.values.back(), table.names};
      const auto report = soil::threshold_select(imp, *opt.threshold);
      soil::json names = soil::json::array();
      for (const int j : report.selected) names.push_back(table.names[static_cast<std::size_t>(j)]);
      selection.push_back({{"method", soil::method_name(methods[m])},
                           {"threshold", *opt.threshold},
                           {"selected", names}});
    }
  }
  print_table(table);
  emit_report(opt, table, selection, nullptr, nullptr);
  return 0;
}

soil::Addon parse_addon(const std::string& name) {
  if (name == "none") return soil::Addon::none;
  if (name == "confuser") return soil::Addon::confuser;
  if (name == "quadratics") return soil::Addon::quadratics;
  if (name == "interactions") return soil::Addon::interactions;
  soil::fail(soil::Errc::config_invalid, "unknown addon '" + name + "'");
}

int run_simulate(const Options& opt) {
  soil::StudyConfig cfg;
  if (!opt.example.empty()) {
    cfg.scenario = soil::example_scenario(opt.example);
  } else if (!opt.beta.empty()) {
    // custom scenario: --beta pins the expanded coefficient vector
    cfg.scenario.addon = parse_addon(opt.addon);
    cfg.scenario.task = parse_task(opt.task);
    cfg.scenario.beta_star =
        Eigen::Map<const Eigen::VectorXd>(opt.beta.data(), static_cast<Eigen::Index>(opt.beta.size()));
    const int p = static_cast<int>(opt.beta.size());
    switch (cfg.scenario.addon) {
      case soil::Addon::none: cfg.scenario.p_base = p; break;
      case soil::Addon::confuser: cfg.scenario.p_base = p - 1; break;
      case soil::Addon::quadratics: cfg.scenario.p_base = p / 2; break;
      case soil::Addon::interactions: cfg.scenario.p_base = p - 6; break;
    }
    cfg.scenario.n = 100;
    cfg.scenario.sigma2 = 1.0;
  } else {
    soil::fail(soil::Errc::config_invalid, "simulate needs --example (1-6, s1-s5) or --beta");
  }
  if (opt.rho) cfg.scenario.rho = *opt.rho;
  if (opt.sigma2) cfg.scenario.sigma2 = *opt.sigma2;
  if (opt.n_override) cfg.scenario.n = *opt.n_override;
  if (opt.reps > 0) cfg.scenario.replications = opt.reps;
  cfg.scenario.seed = opt.seed;
  cfg.methods = parse_methods(opt.methods);
  if (opt.threshold) cfg.thresholds.push_back(*opt.threshold);
  cfg.method.psi = opt.psi;
  cfg.method.arm_splits = opt.splits;
  cfg.method.lambda_count = opt.lambda_count;
  cfg.method.fiducial_gamma = opt.fiducial_gamma;

  const soil::StudyResult result = soil::run_study(cfg);
  soil::ImportanceTable table{result.names, result.methods, result.mean_importance};
  print_table(table);
  emit_report(opt, table, soil::selection_json(result.selection), &result.stderr_importance, &result);
  return 0;
}

int run_cross_examine(const Options& opt) {
  const soil::Dataset data =
      soil::load_dataset(opt.input_path, opt.response_column, soil::Task::regression);
  const soil::CandidateSet cands = build_candidates(data, opt);

  soil::MethodConfig mcfg;
  mcfg.psi = opt.psi;
  mcfg.arm_splits = opt.splits;
  mcfg.lambda_count = opt.lambda_count;
  mcfg.fiducial_gamma = opt.fiducial_gamma;

  const auto base = soil::method_from_name(opt.base_method);
  const Eigen::VectorXd base_w =
      soil::compute_weights(base, data, cands, mcfg, soil::derive_seed(opt.seed, 0, 0));
  const soil::ImportanceVector base_imp = soil::soil(base_w, cands, data.column_names());

  soil::CrossExamConfig xcfg;
  xcfg.top_m = opt.top_m;
  xcfg.replications = opt.reps > 0 ? opt.reps : 100;
  xcfg.seed = opt.seed;
  xcfg.methods = parse_methods(opt.methods);
  xcfg.method = mcfg;

  const soil::StudyResult result = soil::cross_examination(data, base_imp, xcfg);
  soil::ImportanceTable table{result.names, result.methods, result.mean_importance};
  print_table(table);
  emit_report(opt, table, soil::selection_json(result.selection), &result.stderr_importance, &result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SOIL variable importance for sparse linear and logistic regression"};
  app.set_config("--config", "", "flat key=value file mirroring the flags; flags take precedence");

  Options opt;
  app.add_option("--method", opt.methods, "weighting methods: arm, bic-p, fiducial")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--penalty", opt.penalties, "path penalties: lasso, scad, mcp")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--psi", opt.psi, "prior strength in e^{-psi C_k}")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--splits", opt.splits, "ARM random half-splits")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--lambda-count", opt.lambda_count, "path grid length")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  app.add_option("--threshold", opt.threshold, "selection threshold c in (0,1)")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
  app.add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
  app.add_option("--output", opt.output_path, "report path (default soil_report.<format>)");
  app.add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--response", opt.response_column, "response column name");
  app.add_option("--task", opt.task, "dataset task")
      ->check(CLI::IsMember({"regression", "classification"}))
      ->capture_default_str();
  app.add_option("--reps", opt.reps, "replications (simulate, cross-examine)")
      ->check(CLI::PositiveNumber);
  app.add_option("--fiducial-gamma", opt.fiducial_gamma, "binomial-prior exponent for fiducial weights")
      ->capture_default_str();

  auto* importance = app.add_subcommand("importance", "score the variables of a CSV dataset");
  importance->fallthrough();
  importance->add_option("input", opt.input_path, "CSV file with a header row")->required();

  auto* simulate = app.add_subcommand("simulate", "run a replicated scenario study");
  simulate->fallthrough();
  simulate->add_option("--example", opt.example, "scenario name: 1-6 or s1-s5");
  simulate->add_option("--rho", opt.rho, "AR(1) design correlation override");
  simulate->add_option("--sigma2", opt.sigma2, "noise variance override");
  simulate->add_option("--n", opt.n_override, "sample size override");
  simulate->add_option("--beta", opt.beta, "custom scenario: comma-separated true coefficients")
      ->delimiter(',');
  simulate->add_option("--addon", opt.addon, "custom scenario structure")
      ->check(CLI::IsMember({"none", "confuser", "quadratics", "interactions"}));

  auto* cross = app.add_subcommand("cross-examine", "guided simulation from a fitted top-m model");
  cross->fallthrough();
  cross->add_option("input", opt.input_path, "CSV file with a header row")->required();
  cross->add_option("--top-m", opt.top_m, "variables kept from the base ranking")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cross->add_option("--base-method", opt.base_method, "method whose ranking seeds the protocol")
      ->check(CLI::IsMember({"arm", "bic-p", "fiducial"}));

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (importance->parsed()) {
      opt.command = "importance";
      if (opt.response_column.empty())
        soil::fail(soil::Errc::config_invalid, "importance needs --response");
      return run_importance(opt);
    }
    if (simulate->parsed()) {
      opt.command = "simulate";
      return run_simulate(opt);
    }
    opt.command = "cross-examine";
    if (opt.response_column.empty())
      soil::fail(soil::Errc::config_invalid, "cross-examine needs --response");
    return run_cross_examine(opt);
  } catch (const soil::Error& e) {
    std::fprintf(stderr, "soil: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "soil: %s\n", e.what());
    return 1;
  }
}
