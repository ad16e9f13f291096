#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "soil/errors.hpp"
#include "soil/rng.hpp"
#include "soil/types.hpp"

namespace soil {

/// Structural add-ons appended after the base columns:
///   confuser      one column 0.5 X1 + 2 X4 + e, e ~ N(0, 0.01), true coef 0
///   quadratics    the squares of every base column
///   interactions  the six pairwise products of the first four base columns
enum class Addon { none, confuser, quadratics, interactions };

inline const char* addon_name(Addon a) {
  switch (a) {
    case Addon::none: return "none";
    case Addon::confuser: return "confuser";
    case Addon::quadratics: return "quadratics";
    case Addon::interactions: return "interactions";
  }
  return "unknown";
}

struct ScenarioConfig {
  int n = 0;
  int p_base = 0;
  double rho = 0.0;     // AR(1) correlation of the Gaussian design
  double sigma2 = 1.0;  // noise variance (regression only)
  Eigen::VectorXd beta_star;  // length must equal p() after addon expansion
  Task task = Task::regression;
  Addon addon = Addon::none;
  int replications = 100;
  std::uint64_t seed = 0;

  int p() const {
    switch (addon) {
      case Addon::none: return p_base;
      case Addon::confuser: return p_base + 1;
      case Addon::quadratics: return 2 * p_base;
      case Addon::interactions: return p_base + 6;
    }
    return p_base;
  }

  void validate() const {
    if (n < 2 || p_base < 1) fail(Errc::config_invalid, "need n >= 2 and p_base >= 1");
    if (!(rho >= 0.0 && rho < 1.0)) fail(Errc::bad_rho, "rho must lie in [0, 1)");
    if (task == Task::regression && !(sigma2 > 0.0))
      fail(Errc::config_invalid, "sigma2 must be positive");
    if (addon == Addon::confuser && p_base < 4)
      fail(Errc::config_invalid, "confuser addon needs at least 4 base columns");
    if (addon == Addon::interactions && p_base < 4)
      fail(Errc::config_invalid, "interaction addon needs at least 4 base columns");
    if (beta_star.size() != p())
      fail(Errc::config_invalid, "beta_star length " + std::to_string(beta_star.size()) +
                                     " does not match expanded dimension " + std::to_string(p()));
    if (replications < 1) fail(Errc::config_invalid, "need at least one replication");
  }
};

/// Rows i.i.d. N_p(0, Sigma) with Sigma_ij = rho^|i-j|, via the AR(1)
/// recursion x_1 = z_1, x_j = rho x_{j-1} + sqrt(1 - rho^2) z_j (exact for
/// this covariance). Draws are row-major.
inline Eigen::MatrixXd ar1_design(int n, int p, double rho, Rng& rng) {
  if (!(rho >= 0.0 && rho < 1.0)) fail(Errc::bad_rho, "rho must lie in [0, 1)");
  Eigen::MatrixXd X(n, p);
  const double innovation = std::sqrt(1.0 - rho * rho);
  for (int i = 0; i < n; ++i) {
    double prev = rng.normal();
    X(i, 0) = prev;
    for (int j = 1; j < p; ++j) {
      prev = rho * prev + innovation * rng.normal();
      X(i, j) = prev;
    }
  }
  return X;
}

struct GeneratedData {
  Dataset data;
  std::vector<int> true_support;
};

/// Draws one replication of the scenario. The replication index selects an
/// independent random stream from the config seed, so replications are
/// reproducible regardless of execution order. Draw order: base design
/// (row-major), addon noise, then the response.
inline GeneratedData generate_scenario(const ScenarioConfig& cfg, int replication_index) {
  cfg.validate();
  Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(replication_index));

  Eigen::MatrixXd X(cfg.n, cfg.p());
  X.leftCols(cfg.p_base) = ar1_design(cfg.n, cfg.p_base, cfg.rho, rng);
  switch (cfg.addon) {
    case Addon::none:
      break;
    case Addon::confuser:
      for (int i = 0; i < cfg.n; ++i)
        X(i, cfg.p_base) = 0.5 * X(i, 0) + 2.0 * X(i, 3) + 0.1 * rng.normal();
      break;
    case Addon::quadratics:
      for (int j = 0; j < cfg.p_base; ++j)
        X.col(cfg.p_base + j) = X.col(j).array().square();
      break;
    case Addon::interactions: {
      int t = cfg.p_base;
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
          X.col(t++) = X.col(a).cwiseProduct(X.col(b));
      break;
    }
  }

  Eigen::VectorXd y(cfg.n);
  const Eigen::VectorXd eta = X * cfg.beta_star;
  if (cfg.task == Task::regression) {
    const double sigma = std::sqrt(cfg.sigma2);
    for (int i = 0; i < cfg.n; ++i) y[i] = eta[i] + sigma * rng.normal();
  } else {
    for (int i = 0; i < cfg.n; ++i) {
      const double prob = 1.0 / (1.0 + std::exp(-eta[i]));
      y[i] = rng.bernoulli(prob) ? 1.0 : 0.0;
    }
  }

  GeneratedData out;
  out.data = Dataset{std::move(X), std::move(y), cfg.task, Dataset::default_names(cfg.p())};
  for (int j = 0; j < cfg.p(); ++j)
    if (cfg.beta_star[j] != 0.0) out.true_support.push_back(j);
  return out;
}

namespace detail {

inline Eigen::VectorXd strong_signal_beta(int p) {
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  beta[0] = 4.0;
  beta[1] = 4.0;
  beta[2] = 4.0;
  beta[3] = -6.0 * std::sqrt(2.0);
  beta[4] = 0.75;
  return beta;
}

inline Eigen::VectorXd decaying_binomial_beta() {
  Eigen::VectorXd beta(7);
  beta << 1.0, 1.0 / 2.0, 1.0 / 3.0, 1.0 / 4.0, 1.0 / 5.0, 1.0 / 6.0, 0.0;
  return beta;
}

}  // namespace detail

/// Named generative settings ("1".."6", "s1".."s5"). Gaussian presets default
/// to (rho = 0, sigma2 = 0.01); callers override rho/sigma2 to reach the
/// other corners of the grid.
inline ScenarioConfig example_scenario(const std::string& name) {
  ScenarioConfig cfg;
  cfg.rho = 0.0;
  cfg.sigma2 = 0.01;
  if (name == "1") {
    cfg.n = 100;
    cfg.p_base = 200;
    cfg.beta_star = detail::strong_signal_beta(200);
  } else if (name == "2") {
    cfg.n = 150;
    cfg.p_base = 14;
    cfg.addon = Addon::confuser;
    cfg.beta_star = detail::strong_signal_beta(15);
  } else if (name == "3") {
    cfg.n = 150;
    cfg.p_base = 8;
    cfg.beta_star = Eigen::VectorXd::Zero(8);
  } else if (name == "4") {
    cfg.n = 150;
    cfg.p_base = 8;
    cfg.beta_star = Eigen::VectorXd::Ones(8);
  } else if (name == "5" || name == "6") {
    cfg.n = name == "5" ? 80 : 5000;
    cfg.p_base = 7;
    cfg.task = Task::classification;
    cfg.beta_star = detail::decaying_binomial_beta();
  } else if (name == "s1") {
    cfg.n = 150;
    cfg.p_base = 20;
    cfg.beta_star = detail::strong_signal_beta(20);
  } else if (name == "s2") {
    cfg.n = 150;
    cfg.p_base = 6;
    cfg.addon = Addon::quadratics;
    cfg.beta_star = Eigen::VectorXd::Zero(12);
    cfg.beta_star.head(6) << 4.0, 4.0, -6.0 * std::sqrt(2.0), 0.75, 0.0, 0.0;
    cfg.beta_star.tail(6) << 4.0, 0.0, 1.0, 0.0, 0.0, 0.0;
  } else if (name == "s3") {
    cfg.n = 150;
    cfg.p_base = 6;
    cfg.addon = Addon::interactions;
    cfg.beta_star = Eigen::VectorXd::Zero(12);
    cfg.beta_star.head(6) << 4.0, 4.0, -6.0 * std::sqrt(2.0), 0.75, 0.0, 0.0;
    cfg.beta_star.tail(6) << 4.0, 2.0, 2.0, 0.0, 0.0, 0.0;
  } else if (name == "s4") {
    cfg.n = 150;
    cfg.p_base = 20;
    cfg.task = Task::classification;
    cfg.beta_star = detail::strong_signal_beta(20);
  } else if (name == "s5") {
    cfg.n = 100;
    cfg.p_base = 200;
    cfg.task = Task::classification;
    cfg.beta_star = detail::strong_signal_beta(200);
  } else {
    fail(Errc::config_invalid, "unknown example '" + name + "'");
  }
  return cfg;
}

}  // namespace soil
