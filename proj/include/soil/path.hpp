#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "soil/errors.hpp"
#include "soil/fit.hpp"
#include "soil/penalty.hpp"
#include "soil/types.hpp"

namespace soil {

/// Coefficients along a descending lambda grid, on the original column scale.
struct PathEntry {
  double lambda = 0.0;
  Eigen::VectorXd coefficients;  // length p
  double intercept = 0.0;
};

struct SolutionPath {
  std::vector<PathEntry> entries;
};

namespace detail {

struct Standardized {
  Eigen::MatrixXd Xs;      // centered, unit population-sd columns
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;   // 1.0 for (near-)constant columns
};

inline Standardized standardize_columns(const Eigen::MatrixXd& X) {
  const Eigen::Index n = X.rows(), p = X.cols();
  Standardized out;
  out.Xs.resize(n, p);
  out.mean.resize(p);
  out.scale.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double m = X.col(j).mean();
    Eigen::VectorXd c = X.col(j).array() - m;
    double sd = std::sqrt(c.squaredNorm() / static_cast<double>(n));
    if (sd < 1e-12) sd = 1.0;
    out.mean[j] = m;
    out.scale[j] = sd;
    out.Xs.col(j) = c / sd;
  }
  return out;
}

}  // namespace detail

/// Largest penalty at which the path support is empty: max_j |Xs_j'(y - ybar)| / n
/// over standardized columns (the same formula serves the logistic path, whose
/// null model has constant fitted probability ybar).
inline double lambda_max(const Dataset& data) {
  const auto std_cols = detail::standardize_columns(data.X);
  const Eigen::VectorXd yc = data.y.array() - data.y.mean();
  const double n = static_cast<double>(data.n());
  double best = 0.0;
  for (Eigen::Index j = 0; j < data.p(); ++j)
    best = std::max(best, std::abs(std_cols.Xs.col(j).dot(yc)) / n);
  // hair of headroom so rounding in the logistic working response cannot
  // push a coordinate across the KKT bound at the top of the path
  return std::max(best, 1e-12) * (1.0 + 1e-12);
}

/// Log-spaced grid of length count from lambda_max down to lambda_max * r,
/// r = 0.01 when n > p, else 0.05.
inline std::vector<double> default_lambda_grid(const Dataset& data, int count = 100) {
  if (count < 2) fail(Errc::config_invalid, "lambda grid needs at least 2 points");
  const double top = lambda_max(data);
  const double ratio = data.n() > data.p() ? 0.01 : 0.05;
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] =
        top * std::pow(ratio, static_cast<double>(i) / static_cast<double>(count - 1));
  return grid;
}

namespace detail {

constexpr double kCdTol = 1e-7;
constexpr int kCdMaxSweeps = 1000;

// One cyclic sweep of penalized weighted least squares updates. r is the
// working residual, v_j = (1/n) sum_i w_i xs_ij^2. Returns the largest
// coefficient move.
inline double cd_sweep(const Eigen::MatrixXd& Xs, const Eigen::VectorXd& w, Eigen::VectorXd& r,
                       Eigen::VectorXd& beta, const Eigen::VectorXd& v, const PenaltySpec& spec,
                       double lambda, bool weighted) {
  const double n = static_cast<double>(Xs.rows());
  double max_move = 0.0;
  for (Eigen::Index j = 0; j < Xs.cols(); ++j) {
    if (v[j] < 1e-12) continue;  // constant column, never enters
    const double old = beta[j];
    double u;
    if (weighted)
      u = (Xs.col(j).array() * w.array() * r.array()).sum() / n + v[j] * old;
    else
      u = Xs.col(j).dot(r) / n + v[j] * old;
    const double next = univariate_update(spec.kind, u, v[j], lambda, spec.gamma);
    if (!std::isfinite(next)) fail(Errc::non_finite, "coordinate descent diverged; check scaling");
    const double move = next - old;
    if (move != 0.0) {
      r -= move * Xs.col(j);
      beta[j] = next;
      max_move = std::max(max_move, std::abs(move));
    }
  }
  return max_move;
}

inline SolutionPath regression_path(const Dataset& data, const PenaltySpec& spec) {
  const Eigen::Index n = data.n(), p = data.p();
  const Standardized std_cols = standardize_columns(data.X);
  const Eigen::VectorXd yc = data.y.array() - data.y.mean();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);

  Eigen::VectorXd v(p);
  for (Eigen::Index j = 0; j < p; ++j)
    v[j] = std_cols.Xs.col(j).squaredNorm() / static_cast<double>(n);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);  // standardized scale, warm across lambdas
  Eigen::VectorXd r = yc;

  SolutionPath path;
  path.entries.reserve(spec.lambda_grid.size());
  for (const double lambda : spec.lambda_grid) {
    for (int sweep = 0; sweep < kCdMaxSweeps; ++sweep) {
      const double move = cd_sweep(std_cols.Xs, ones, r, beta, v, spec, lambda, false);
      if (move < kCdTol) break;
    }
    PathEntry entry;
    entry.lambda = lambda;
    entry.coefficients.resize(p);
    double dot_mean = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      entry.coefficients[j] = beta[j] / std_cols.scale[j];
      dot_mean += entry.coefficients[j] * std_cols.mean[j];
    }
    entry.intercept = data.y.mean() - dot_mean;
    path.entries.push_back(std::move(entry));
  }
  return path;
}

// Penalized logistic path: outer quadratic majorization (IRLS working
// response), inner penalized weighted coordinate descent, warm-started
// across lambdas.
inline SolutionPath logistic_path(const Dataset& data, const PenaltySpec& spec) {
  const Eigen::Index n = data.n(), p = data.p();
  const Standardized std_cols = standardize_columns(data.X);
  const double ybar = data.y.mean();
  if (ybar <= 0.0 || ybar >= 1.0) fail(Errc::one_class_only, "response is constant");

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  double b0 = std::log(ybar / (1.0 - ybar));

  Eigen::VectorXd v(p), w(n), z(n), r(n), eta(n), prob(n);

  SolutionPath path;
  path.entries.reserve(spec.lambda_grid.size());
  constexpr int kMaxOuter = 50;
  for (const double lambda : spec.lambda_grid) {
    for (int outer = 0; outer < kMaxOuter; ++outer) {
      eta = std_cols.Xs * beta;
      eta.array() += b0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double pi = std::clamp(sigmoid(eta[i]), 1e-5, 1.0 - 1e-5);
        prob[i] = pi;
        w[i] = pi * (1.0 - pi);
        z[i] = eta[i] + (data.y[i] - pi) / w[i];
      }
      for (Eigen::Index j = 0; j < p; ++j)
        v[j] = (std_cols.Xs.col(j).array().square() * w.array()).sum() / static_cast<double>(n);

      r = z - eta;  // working residual at current (b0, beta)
      double outer_move = 0.0;
      for (int sweep = 0; sweep < kCdMaxSweeps; ++sweep) {
        double move = cd_sweep(std_cols.Xs, w, r, beta, v, spec, lambda, true);
        const double wsum = w.sum();
        const double d0 = (w.array() * r.array()).sum() / wsum;
        b0 += d0;
        r.array() -= d0;
        move = std::max(move, std::abs(d0));
        outer_move = std::max(outer_move, move);
        if (move < kCdTol) break;
      }
      if (outer_move < kCdTol) break;
    }
    PathEntry entry;
    entry.lambda = lambda;
    entry.coefficients.resize(p);
    double dot_mean = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      entry.coefficients[j] = beta[j] / std_cols.scale[j];
      dot_mean += entry.coefficients[j] * std_cols.mean[j];
    }
    entry.intercept = b0 - dot_mean;
    path.entries.push_back(std::move(entry));
  }
  return path;
}

}  // namespace detail

/// Solution path over the given lambda grid via cyclic coordinate descent on
/// standardized columns (unpenalized intercept), warm-started from the
/// previous lambda. Classification datasets use the penalized logistic
/// analogue of the least-squares objective.
inline SolutionPath penalized_path(const Dataset& data, const PenaltySpec& spec) {
  data.validate();
  spec.validate();
  return data.task == Task::regression ? detail::regression_path(data, spec)
                                       : detail::logistic_path(data, spec);
}

/// Mean-squared-error penalized objective at original-scale coefficients:
/// (1/(2n)) ||y - b0 - X beta||^2 + sum_j p_lambda(beta_j * scale_j).
/// Penalties apply on the standardized scale, matching the solver.
inline double penalized_objective(const Dataset& data, const PenaltySpec& spec, double lambda,
                                  const Eigen::VectorXd& coefficients, double intercept) {
  const auto std_cols = detail::standardize_columns(data.X);
  const Eigen::VectorXd resid =
      data.y - (data.X * coefficients).array().matrix() - Eigen::VectorXd::Constant(data.n(), intercept);
  double obj = resid.squaredNorm() / (2.0 * static_cast<double>(data.n()));
  for (Eigen::Index j = 0; j < data.p(); ++j)
    obj += penalty_value(spec.kind, coefficients[j] * std_cols.scale[j], lambda, spec.gamma);
  return obj;
}

}  // namespace soil
