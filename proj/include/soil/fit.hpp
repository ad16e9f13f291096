#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "soil/errors.hpp"
#include "soil/types.hpp"

namespace soil {

/// Floor for the residual-scale MLE; an exact fit would otherwise send the
/// half-sample predictive density to infinity.
inline constexpr double kSigmaFloor = 1e-8;

/// Probability clamp applied before any Bernoulli log-likelihood evaluation.
inline constexpr double kProbClamp = 1e-10;

struct LinearFit {
  Eigen::VectorXd coefficients;  // one per support column, support order
  double intercept = 0.0;
  double sigma_hat = 0.0;  // residual scale (MLE), floored at kSigmaFloor
  double rss = 0.0;
  double log_likelihood = 0.0;
};

struct LogisticFit {
  Eigen::VectorXd coefficients;
  double intercept = 0.0;
  double log_likelihood = 0.0;
  bool separation = false;  // some |coefficient| ran past 30
};

namespace detail {

// Design restricted to (rows, support) with a leading intercept column.
inline Eigen::MatrixXd restricted_design(const Eigen::MatrixXd& X, std::span<const int> support,
                                         std::span<const int> rows) {
  const Eigen::Index nr = rows.empty() ? X.rows() : static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd A(nr, static_cast<Eigen::Index>(support.size()) + 1);
  A.col(0).setOnes();
  for (Eigen::Index t = 0; t < static_cast<Eigen::Index>(support.size()); ++t) {
    const int j = support[static_cast<std::size_t>(t)];
    if (rows.empty()) {
      A.col(t + 1) = X.col(j);
    } else {
      for (Eigen::Index i = 0; i < nr; ++i) A(i, t + 1) = X(rows[static_cast<std::size_t>(i)], j);
    }
  }
  return A;
}

inline Eigen::VectorXd subset(const Eigen::VectorXd& v, std::span<const int> rows) {
  if (rows.empty()) return v;
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = v[rows[static_cast<std::size_t>(i)]];
  return out;
}

// Solves the normal equations G b = r for a PSD Gram matrix, rejecting
// rank-deficient systems via the LDLT pivot sizes.
inline Eigen::VectorXd solve_gram(const Eigen::MatrixXd& G, const Eigen::VectorXd& r) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  if (ldlt.info() != Eigen::Success) fail(Errc::rank_deficient, "restricted design is singular");
  const Eigen::VectorXd d = ldlt.vectorD();
  const double dmax = d.maxCoeff();
  if (dmax <= 0.0 || d.minCoeff() < 1e-12 * dmax)
    fail(Errc::rank_deficient, "restricted design is singular");
  return ldlt.solve(r);
}

}  // namespace detail

/// Least squares of y on the support columns of X plus an intercept,
/// optionally over a row subset. sigma_hat is the MLE scale RSS/n_rows,
/// floored; log_likelihood is the Gaussian log-density of the residuals at
/// (coefficients, sigma_hat).
inline LinearFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         std::span<const int> support, std::span<const int> rows = {}) {
  const Eigen::Index nr = rows.empty() ? X.rows() : static_cast<Eigen::Index>(rows.size());
  const auto s = static_cast<Eigen::Index>(support.size());
  if (s + 1 >= nr)
    fail(Errc::too_many_variables,
         "support size " + std::to_string(s) + " too large for " + std::to_string(nr) + " rows");

  const Eigen::MatrixXd A = detail::restricted_design(X, support, rows);
  const Eigen::VectorXd ys = detail::subset(y, rows);
  const Eigen::MatrixXd G = A.transpose() * A;
  const Eigen::VectorXd b = detail::solve_gram(G, A.transpose() * ys);

  LinearFit fit;
  fit.intercept = b[0];
  fit.coefficients = b.tail(s);
  fit.rss = (ys - A * b).squaredNorm();
  const double sigma2 = fit.rss / static_cast<double>(nr);
  fit.sigma_hat = std::max(std::sqrt(sigma2), kSigmaFloor);
  const double v = fit.sigma_hat * fit.sigma_hat;
  fit.log_likelihood = -0.5 * static_cast<double>(nr) * std::log(2.0 * std::numbers::pi * v) -
                       fit.rss / (2.0 * v);
  return fit;
}

inline LinearFit ols_fit(const Dataset& data, std::span<const int> support) {
  return ols_fit(data.X, data.y, support);
}

inline double linear_predict_row(const Eigen::MatrixXd& X, Eigen::Index i, const LinearFit& fit,
                                 std::span<const int> support) {
  double eta = fit.intercept;
  for (std::size_t t = 0; t < support.size(); ++t)
    eta += fit.coefficients[static_cast<Eigen::Index>(t)] * X(i, support[t]);
  return eta;
}

inline double clamp_probability(double p) {
  return std::clamp(p, kProbClamp, 1.0 - kProbClamp);
}

inline double sigmoid(double eta) {
  if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

/// Bernoulli MLE via iteratively reweighted least squares on the support
/// columns plus an intercept. Converges when no coefficient moves more than
/// 1e-8, capped at 100 iterations; a 1e-10 ridge guards the weighted normal
/// equations. Separation is flagged, not fatal: probabilities are clamped
/// before the likelihood is evaluated.
inline LogisticFit logistic_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                std::span<const int> support, std::span<const int> rows = {}) {
  const Eigen::VectorXd ys = detail::subset(y, rows);
  const Eigen::Index nr = ys.size();
  const auto s = static_cast<Eigen::Index>(support.size());
  if (s + 1 >= nr)
    fail(Errc::too_many_variables,
         "support size " + std::to_string(s) + " too large for " + std::to_string(nr) + " rows");
  const double ymean = ys.mean();
  if (ymean <= 0.0 || ymean >= 1.0) fail(Errc::one_class_only, "response is constant");

  const Eigen::MatrixXd A = detail::restricted_design(X, support, rows);
  const Eigen::Index q = A.cols();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(q);

  constexpr int kMaxIter = 100;
  constexpr double kTol = 1e-8;
  constexpr double kRidge = 1e-10;
  constexpr double kMaxStep = 10.0;  // bounds Newton steps under separation

  Eigen::VectorXd eta(nr), prob(nr), sqw(nr);
  Eigen::MatrixXd scaled(nr, q), H(q, q);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    eta.noalias() = A * beta;
    for (Eigen::Index i = 0; i < nr; ++i) {
      prob[i] = sigmoid(eta[i]);
      sqw[i] = std::sqrt(prob[i] * (1.0 - prob[i]));  // ridge below keeps H invertible
    }
    scaled.noalias() = sqw.asDiagonal() * A;
    H.setZero();
    H.selfadjointView<Eigen::Lower>().rankUpdate(scaled.adjoint());
    H.diagonal().array() += kRidge;
    const Eigen::VectorXd grad = A.transpose() * (ys - prob);
    Eigen::VectorXd step = Eigen::LDLT<Eigen::MatrixXd, Eigen::Lower>(H).solve(grad);
    if (!step.allFinite()) fail(Errc::non_finite, "IRLS step diverged");
    const double maxstep = step.cwiseAbs().maxCoeff();
    if (maxstep > kMaxStep) step *= kMaxStep / maxstep;
    beta += step;
    if (step.cwiseAbs().maxCoeff() < kTol) break;
  }

  LogisticFit fit;
  fit.intercept = beta[0];
  fit.coefficients = beta.tail(q - 1);
  fit.separation = beta.cwiseAbs().maxCoeff() > 30.0;
  eta.noalias() = A * beta;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < nr; ++i) {
    const double p = clamp_probability(sigmoid(eta[i]));
    ll += ys[i] * std::log(p) + (1.0 - ys[i]) * std::log(1.0 - p);
  }
  fit.log_likelihood = ll;
  return fit;
}

inline LogisticFit logistic_fit(const Dataset& data, std::span<const int> support) {
  if (data.task != Task::classification)
    fail(Errc::config_invalid, "logistic_fit requires a classification dataset");
  return logistic_fit(data.X, data.y, support);
}

inline double logistic_predict_row(const Eigen::MatrixXd& X, Eigen::Index i,
                                   const LogisticFit& fit, std::span<const int> support) {
  double eta = fit.intercept;
  for (std::size_t t = 0; t < support.size(); ++t)
    eta += fit.coefficients[static_cast<Eigen::Index>(t)] * X(i, support[t]);
  return sigmoid(eta);
}

}  // namespace soil
