#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "soil/candidates.hpp"
#include "soil/errors.hpp"
#include "soil/importance.hpp"
#include "soil/parallel.hpp"
#include "soil/path.hpp"
#include "soil/scenarios.hpp"
#include "soil/types.hpp"
#include "soil/weighting.hpp"

namespace soil {

enum class WeightingMethod { arm, bic_p, fiducial };

inline const char* method_name(WeightingMethod m) {
  switch (m) {
    case WeightingMethod::arm: return "arm";
    case WeightingMethod::bic_p: return "bic-p";
    case WeightingMethod::fiducial: return "fiducial";
  }
  return "unknown";
}

inline WeightingMethod method_from_name(const std::string& name) {
  if (name == "arm") return WeightingMethod::arm;
  if (name == "bic-p" || name == "bic_p" || name == "bicp") return WeightingMethod::bic_p;
  if (name == "fiducial") return WeightingMethod::fiducial;
  fail(Errc::config_invalid, "unknown weighting method '" + name + "'");
}

/// Knobs shared by every weighting scheme in a study.
struct MethodConfig {
  double psi = 0.5;
  int arm_splits = 100;
  int lambda_count = 100;
  double fiducial_gamma = 1.0;
};

/// Candidate recipe used throughout: all subsets when p <= 10, otherwise the
/// merged Lasso + SCAD + MCP solution paths on default grids. Supports larger
/// than floor(n/2) - 2 are dropped either way.
inline CandidateSet default_candidates(const Dataset& data, int lambda_count = 100) {
  const int cap = static_cast<int>(data.n()) / 2 - 2;
  if (data.p() <= 10) {
    const CandidateSet sets[] = {all_subsets(static_cast<int>(data.p()))};
    return merge_sets(sets, cap);
  }
  const std::vector<double> grid = default_lambda_grid(data, lambda_count);
  const CandidateSet sets[] = {
      extract_supports(penalized_path(data, PenaltySpec::lasso(grid)), static_cast<int>(data.p())),
      extract_supports(penalized_path(data, PenaltySpec::scad(grid)), static_cast<int>(data.p())),
      extract_supports(penalized_path(data, PenaltySpec::mcp(grid)), static_cast<int>(data.p())),
  };
  return merge_sets(sets, cap);
}

inline Eigen::VectorXd compute_weights(WeightingMethod method, const Dataset& data,
                                       const CandidateSet& cands, const MethodConfig& cfg,
                                       std::uint64_t arm_seed) {
  switch (method) {
    case WeightingMethod::arm: {
      ArmConfig arm;
      arm.psi = cfg.psi;
      arm.n_splits = cfg.arm_splits;
      arm.seed = arm_seed;
      return arm_weights(data, cands, arm);
    }
    case WeightingMethod::bic_p:
      return bic_p_weights(data, cands, cfg.psi);
    case WeightingMethod::fiducial:
      return fiducial_weights(data, cands, cfg.fiducial_gamma);
  }
  fail(Errc::config_invalid, "unknown weighting method");
}

struct StudyConfig {
  ScenarioConfig scenario;
  std::vector<WeightingMethod> methods{WeightingMethod::arm, WeightingMethod::bic_p};
  std::vector<double> thresholds;  // optional selection thresholds
  MethodConfig method;
  // replaces the default candidate recipe when set
  std::function<CandidateSet(const Dataset&)> candidates_override;
};

struct SelectionSummary {
  WeightingMethod method;
  double threshold = 0.0;
  double mean_missed_true = 0.0;
  double mean_over_selected = 0.0;
  double mean_symmetric_difference = 0.0;
};

struct StudyResult {
  std::vector<std::string> names;
  std::vector<WeightingMethod> methods;
  std::vector<int> true_support;
  // per_replication[r][m] is the importance vector of method m on replication r
  std::vector<std::vector<Eigen::VectorXd>> per_replication;
  std::vector<Eigen::VectorXd> mean_importance;    // per method
  std::vector<Eigen::VectorXd> stderr_importance;  // per method
  std::vector<SelectionSummary> selection;
};

namespace detail {

inline StudyResult aggregate_study(std::vector<std::vector<Eigen::VectorXd>> per_replication,
                                   std::vector<WeightingMethod> methods,
                                   std::vector<std::string> names, std::vector<int> true_support,
                                   const std::vector<double>& thresholds) {
  StudyResult result;
  result.names = std::move(names);
  result.methods = std::move(methods);
  result.true_support = std::move(true_support);
  result.per_replication = std::move(per_replication);

  const auto reps = static_cast<double>(result.per_replication.size());
  const std::size_t n_methods = result.methods.size();
  const Eigen::Index p = result.per_replication.front().front().size();

  for (std::size_t m = 0; m < n_methods; ++m) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(p);
    for (const auto& rep : result.per_replication) mean += rep[m];
    mean /= reps;
    Eigen::VectorXd var = Eigen::VectorXd::Zero(p);
    for (const auto& rep : result.per_replication)
      var += (rep[m] - mean).array().square().matrix();
    Eigen::VectorXd se = Eigen::VectorXd::Zero(p);
    if (reps > 1.0) se = ((var / (reps - 1.0)) / reps).array().sqrt();
    result.mean_importance.push_back(std::move(mean));
    result.stderr_importance.push_back(std::move(se));
  }

  for (std::size_t m = 0; m < n_methods; ++m) {
    for (const double c : thresholds) {
      SelectionSummary sum;
      sum.method = result.methods[m];
      sum.threshold = c;
      for (const auto& rep : result.per_replication) {
        ImportanceVector imp{rep[m], {}};
        const SelectionReport sel = threshold_select(imp, c, result.true_support);
        sum.mean_missed_true += sel.missed_true;
        sum.mean_over_selected += sel.over_selected;
        sum.mean_symmetric_difference += sel.symmetric_difference;
      }
      sum.mean_missed_true /= reps;
      sum.mean_over_selected /= reps;
      sum.mean_symmetric_difference /= reps;
      result.selection.push_back(sum);
    }
  }
  return result;
}

}  // namespace detail

/// Replicated importance study: per replication, draw the scenario, build the
/// default candidate set, compute every requested weighting and its SOIL
/// vector. Replications run in parallel on independent random streams;
/// aggregation is in replication order, so the result depends only on the
/// seed.
inline StudyResult run_study(const StudyConfig& cfg) {
  cfg.scenario.validate();
  if (cfg.methods.empty()) fail(Errc::config_invalid, "no weighting methods requested");
  const int reps = cfg.scenario.replications;

  std::vector<int> true_support;
  for (int j = 0; j < cfg.scenario.p(); ++j)
    if (cfg.scenario.beta_star[j] != 0.0) true_support.push_back(j);

  std::vector<std::vector<Eigen::VectorXd>> per_replication(static_cast<std::size_t>(reps));
  parallel_for(reps, [&](int r) {
    const GeneratedData gen = generate_scenario(cfg.scenario, r);
    const CandidateSet cands = cfg.candidates_override
                                   ? cfg.candidates_override(gen.data)
                                   : default_candidates(gen.data, cfg.method.lambda_count);
    std::vector<Eigen::VectorXd> per_method;
    per_method.reserve(cfg.methods.size());
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
      const std::uint64_t arm_seed = derive_seed(cfg.scenario.seed, static_cast<std::uint64_t>(r),
                                                 0x517cc1b727220a95ULL + m);
      const Eigen::VectorXd w = compute_weights(cfg.methods[m], gen.data, cands, cfg.method, arm_seed);
      per_method.push_back(soil(w, cands).s);
    }
    per_replication[static_cast<std::size_t>(r)] = std::move(per_method);
  });

  return detail::aggregate_study(std::move(per_replication), cfg.methods,
                                 Dataset::default_names(cfg.scenario.p()), std::move(true_support),
                                 cfg.thresholds);
}

struct CrossExamConfig {
  int top_m = 2;
  int replications = 100;
  std::uint64_t seed = 0;
  std::vector<WeightingMethod> methods{WeightingMethod::arm, WeightingMethod::bic_p};
  MethodConfig method;
};

/// Guided simulation: take the top_m variables of the base importance, fit
/// them by OLS, regenerate responses as Y_new = X beta_hat + sigma_hat N(0,1)
/// on the original design, and recompute every requested importance on each
/// regenerated dataset. The generating support is reported as the truth.
inline StudyResult cross_examination(const Dataset& data, const ImportanceVector& base_importance,
                                     const CrossExamConfig& cfg) {
  data.validate();
  if (data.task != Task::regression)
    fail(Errc::config_invalid, "cross-examination applies to regression data");
  if (cfg.top_m < 1) fail(Errc::config_invalid, "top_m must be at least 1");
  if (base_importance.s.size() != data.p())
    fail(Errc::length_mismatch, "importance length does not match predictors");

  const std::vector<int> ranked = rank_variables(base_importance);
  std::vector<int> selected(ranked.begin(),
                            ranked.begin() + std::min<std::size_t>(ranked.size(),
                                                                   static_cast<std::size_t>(cfg.top_m)));
  std::sort(selected.begin(), selected.end());
  const LinearFit fit = ols_fit(data, selected);

  std::vector<std::vector<Eigen::VectorXd>> per_replication(
      static_cast<std::size_t>(cfg.replications));
  parallel_for(cfg.replications, [&](int r) {
    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(r));
    Dataset regen;
    regen.X = data.X;
    regen.task = Task::regression;
    regen.names = data.column_names();
    regen.y.resize(data.n());
    for (Eigen::Index i = 0; i < data.n(); ++i)
      regen.y[i] = linear_predict_row(data.X, i, fit, selected) + fit.sigma_hat * rng.normal();

    const CandidateSet cands = default_candidates(regen, cfg.method.lambda_count);
    std::vector<Eigen::VectorXd> per_method;
    per_method.reserve(cfg.methods.size());
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
      const std::uint64_t arm_seed =
          derive_seed(cfg.seed, static_cast<std::uint64_t>(r), 0x2545f4914f6cdd1dULL + m);
      const Eigen::VectorXd w = compute_weights(cfg.methods[m], regen, cands, cfg.method, arm_seed);
      per_method.push_back(soil(w, cands).s);
    }
    per_replication[static_cast<std::size_t>(r)] = std::move(per_method);
  });

  return detail::aggregate_study(std::move(per_replication), cfg.methods, data.column_names(),
                                 selected, {});
}

}  // namespace soil
