#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "soil/candidates.hpp"
#include "soil/errors.hpp"
#include "soil/fit.hpp"
#include "soil/parallel.hpp"
#include "soil/rng.hpp"
#include "soil/types.hpp"

namespace soil {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// exp-normalizes log scores onto the simplex via log-sum-exp; -inf entries
/// map to exactly 0.
inline Eigen::VectorXd normalize_log_weights(const Eigen::VectorXd& log_scores) {
  const double top = log_scores.maxCoeff();
  if (!std::isfinite(top)) fail(Errc::all_infinite, "every log score is -inf");
  double denom = 0.0;
  for (Eigen::Index k = 0; k < log_scores.size(); ++k)
    denom += std::exp(log_scores[k] - top);
  Eigen::VectorXd w(log_scores.size());
  for (Eigen::Index k = 0; k < log_scores.size(); ++k)
    w[k] = std::isfinite(log_scores[k]) ? std::exp(log_scores[k] - top) / denom : 0.0;
  return w;
}

struct ArmConfig {
  double psi = 0.5;          // prior strength in e^{-psi C_k}
  int n_splits = 100;        // L random half splits
  std::uint64_t seed = 0;
  double sigma_floor = 1e-8;
};

/// Deterministic half split for ARM: a random permutation of [0, n) seeded by
/// (seed, split_index); the first ceil(n/2) rows train, the rest score.
/// Exposed so tests can evaluate the weighting formulas on frozen splits.
inline std::pair<std::vector<int>, std::vector<int>> arm_split(std::uint64_t seed, int split_index,
                                                               int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(split_index));
  rng.shuffle(order);
  const int n_train = (n + 1) / 2;
  std::vector<int> train(order.begin(), order.begin() + n_train);
  std::vector<int> test(order.begin() + n_train, order.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

namespace detail {

// Shared ARM driver: per split, score every candidate on the held-out half,
// normalize in log space, then average the per-split weight vectors. Splits
// run in parallel; each writes its own slot, and the final average is summed
// in split order so results do not depend on scheduling.
template <typename ScoreSplit>
Eigen::VectorXd arm_average(const Dataset& data, const CandidateSet& cands, const ArmConfig& cfg,
                            ScoreSplit&& score_split) {
  if (cfg.n_splits < 1) fail(Errc::config_invalid, "need at least one ARM split");
  if (!(cfg.psi >= 0.0)) fail(Errc::config_invalid, "psi must be nonnegative");
  if (cands.models.empty()) fail(Errc::no_fittable_candidate, "empty candidate set");
  const auto K = static_cast<Eigen::Index>(cands.size());
  std::vector<Eigen::VectorXd> per_split(static_cast<std::size_t>(cfg.n_splits));
  parallel_for(cfg.n_splits, [&](int l) {
    auto [train, test] = arm_split(cfg.seed, l, static_cast<int>(data.n()));
    Eigen::VectorXd scores(K);
    for (Eigen::Index k = 0; k < K; ++k)
      scores[k] = score_split(cands.models[static_cast<std::size_t>(k)], train, test);
    if (!std::isfinite(scores.maxCoeff()))
      fail(Errc::no_fittable_candidate,
           "no candidate model could be fit on split " + std::to_string(l));
    per_split[static_cast<std::size_t>(l)] = normalize_log_weights(scores);
  });
  Eigen::VectorXd w = Eigen::VectorXd::Zero(K);
  for (const auto& ws : per_split) w += ws;
  return w / static_cast<double>(cfg.n_splits);
}

}  // namespace detail

/// ARM weighting, regression: each candidate is OLS-fit on the training half
/// and scored on the held-out half by
///   -psi C_k - |D2| log sigma_k - sum_{i in D2} (y_i - x_i' beta_k)^2 / (2 sigma_k^2),
/// normalized per split and averaged over cfg.n_splits splits. Candidates
/// that fail to fit on a training half get -inf for that split.
inline Eigen::VectorXd arm_weights_regression(const Dataset& data, const CandidateSet& cands,
                                              const ArmConfig& cfg) {
  data.validate();
  if (data.task != Task::regression) fail(Errc::config_invalid, "regression dataset required");
  if (data.n() < 4) fail(Errc::invalid_dataset, "ARM needs n >= 4");
  return detail::arm_average(
      data, cands, cfg,
      [&](const CandidateModel& m, const std::vector<int>& train, const std::vector<int>& test) {
        LinearFit fit;
        try {
          fit = ols_fit(data.X, data.y, m.support, train);
        } catch (const Error&) {
          return kNegInf;
        }
        const double sigma = std::max(fit.sigma_hat, cfg.sigma_floor);
        double score = -cfg.psi * m.complexity -
                       static_cast<double>(test.size()) * std::log(sigma);
        const double inv2v = 1.0 / (2.0 * sigma * sigma);
        for (const int i : test) {
          const double resid = data.y[i] - linear_predict_row(data.X, i, fit, m.support);
          score -= resid * resid * inv2v;
        }
        return score;
      });
}

/// ARM weighting, binary classification: logistic fit on the training half,
/// Bernoulli log-likelihood of the held-out half with clamped probabilities.
inline Eigen::VectorXd arm_weights_logistic(const Dataset& data, const CandidateSet& cands,
                                            const ArmConfig& cfg) {
  data.validate();
  if (data.task != Task::classification)
    fail(Errc::config_invalid, "classification dataset required");
  const double ybar = data.y.mean();
  if (ybar <= 0.0 || ybar >= 1.0) fail(Errc::one_class_only, "response is constant");
  return detail::arm_average(
      data, cands, cfg,
      [&](const CandidateModel& m, const std::vector<int>& train, const std::vector<int>& test) {
        LogisticFit fit;
        try {
          fit = logistic_fit(data.X, data.y, m.support, train);
        } catch (const Error&) {
          return kNegInf;
        }
        double score = -cfg.psi * m.complexity;
        for (const int i : test) {
          const double p = clamp_probability(logistic_predict_row(data.X, i, fit, m.support));
          score += data.y[i] * std::log(p) + (1.0 - data.y[i]) * std::log(1.0 - p);
        }
        return score;
      });
}

inline Eigen::VectorXd arm_weights(const Dataset& data, const CandidateSet& cands,
                                   const ArmConfig& cfg) {
  return data.task == Task::regression ? arm_weights_regression(data, cands, cfg)
                                       : arm_weights_logistic(data, cands, cfg);
}

/// BIC weighting with the nonuniform prior e^{-psi C_k}:
///   log score_k = -I_k / 2 - psi C_k,
/// I_k = -2 log l_k + f s_k log n with f = 1 for regression and f = 2 for
/// classification (override via size_factor). Unfittable candidates get -inf.
inline Eigen::VectorXd bic_p_weights(const Dataset& data, const CandidateSet& cands, double psi,
                                     std::optional<double> size_factor = std::nullopt) {
  data.validate();
  if (!(psi >= 0.0)) fail(Errc::config_invalid, "psi must be nonnegative");
  if (cands.models.empty()) fail(Errc::no_fittable_candidate, "empty candidate set");
  const double factor = size_factor.value_or(data.task == Task::regression ? 1.0 : 2.0);
  const double logn = std::log(static_cast<double>(data.n()));
  const auto K = static_cast<Eigen::Index>(cands.size());
  Eigen::VectorXd scores(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const auto& m = cands.models[static_cast<std::size_t>(k)];
    double loglik;
    try {
      loglik = data.task == Task::regression ? ols_fit(data, m.support).log_likelihood
                                             : logistic_fit(data, m.support).log_likelihood;
    } catch (const Error&) {
      scores[k] = kNegInf;
      continue;
    }
    const double ic = -2.0 * loglik + factor * static_cast<double>(m.size()) * logn;
    scores[k] = -ic / 2.0 - psi * m.complexity;
  }
  return normalize_log_weights(scores);
}

/// Generalized fiducial weighting (regression only):
///   log R(A_k) = lgamma((n-s)/2) - ((n-s-1)/2) log(pi RSS)
///                - ((s+1)/2) log n - gamma_f log C(p, s),
/// normalized over the candidate set. RSS is floored at 1e-12; candidates
/// with n - s < 2 get -inf.
inline Eigen::VectorXd fiducial_weights(const Dataset& data, const CandidateSet& cands,
                                        double gamma_f = 1.0) {
  data.validate();
  if (data.task != Task::regression)
    fail(Errc::config_invalid, "fiducial weighting applies to regression only");
  if (cands.models.empty()) fail(Errc::no_fittable_candidate, "empty candidate set");
  const double n = static_cast<double>(data.n());
  const double p = static_cast<double>(cands.p);
  const auto K = static_cast<Eigen::Index>(cands.size());
  Eigen::VectorXd scores(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const auto& m = cands.models[static_cast<std::size_t>(k)];
    const double s = static_cast<double>(m.size());
    if (n - s < 2.0) {
      scores[k] = kNegInf;
      continue;
    }
    double rss;
    try {
      rss = std::max(ols_fit(data, m.support).rss, 1e-12);
    } catch (const Error&) {
      scores[k] = kNegInf;
      continue;
    }
    const double log_choose = std::lgamma(p + 1.0) - std::lgamma(s + 1.0) - std::lgamma(p - s + 1.0);
    scores[k] = std::lgamma((n - s) / 2.0) -
                ((n - s - 1.0) / 2.0) * std::log(std::numbers::pi * rss) -
                ((s + 1.0) / 2.0) * std::log(n) - gamma_f * log_choose;
  }
  return normalize_log_weights(scores);
}

}  // namespace soil
