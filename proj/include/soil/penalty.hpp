#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "soil/errors.hpp"

namespace soil {

enum class PenaltyKind { lasso, scad, mcp };

inline const char* penalty_name(PenaltyKind k) {
  switch (k) {
    case PenaltyKind::lasso: return "lasso";
    case PenaltyKind::scad: return "scad";
    case PenaltyKind::mcp: return "mcp";
  }
  return "unknown";
}

inline PenaltyKind penalty_from_name(const std::string& name) {
  if (name == "lasso") return PenaltyKind::lasso;
  if (name == "scad") return PenaltyKind::scad;
  if (name == "mcp") return PenaltyKind::mcp;
  fail(Errc::config_invalid, "unknown penalty '" + name + "'");
}

struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::lasso;
  double gamma = 0.0;  // concavity; unused for lasso
  std::vector<double> lambda_grid;  // strictly decreasing, positive

  static PenaltySpec lasso(std::vector<double> grid) { return {PenaltyKind::lasso, 0.0, std::move(grid)}; }
  static PenaltySpec scad(std::vector<double> grid, double gamma = 3.7) { return {PenaltyKind::scad, gamma, std::move(grid)}; }
  static PenaltySpec mcp(std::vector<double> grid, double gamma = 3.0) { return {PenaltyKind::mcp, gamma, std::move(grid)}; }

  void validate() const {
    if (kind == PenaltyKind::scad && !(gamma > 2.0)) fail(Errc::config_invalid, "scad requires gamma > 2");
    if (kind == PenaltyKind::mcp && !(gamma > 1.0)) fail(Errc::config_invalid, "mcp requires gamma > 1");
    if (lambda_grid.empty()) fail(Errc::config_invalid, "empty lambda grid");
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
      if (!(lambda_grid[i] > 0.0)) fail(Errc::config_invalid, "lambda grid entries must be positive");
      if (i > 0 && !(lambda_grid[i] < lambda_grid[i - 1]))
        fail(Errc::config_invalid, "lambda grid must be strictly decreasing");
    }
  }
};

/// sign(z) * max(|z| - t, 0), t >= 0.
inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

/// Penalty value p_lambda(u). SCAD is the three-piece quadratic spline
/// (gamma > 2), MCP the minimax concave penalty (gamma > 1).
inline double penalty_value(PenaltyKind kind, double u, double lambda, double gamma) {
  const double a = std::abs(u);
  switch (kind) {
    case PenaltyKind::lasso:
      return lambda * a;
    case PenaltyKind::scad:
      if (a <= lambda) return lambda * a;
      if (a <= gamma * lambda) {
        const double d = lambda - a;
        return lambda * a - d * d / (2.0 * (gamma - 1.0));
      }
      return (gamma + 1.0) * lambda * lambda / 2.0;
    case PenaltyKind::mcp:
      if (a <= gamma * lambda) return lambda * (a - u * u / (2.0 * gamma * lambda));
      return gamma * lambda * lambda / 2.0;
  }
  return 0.0;
}

namespace detail {

// h(b) = (v/2) b^2 - u b + p_lambda(b), the exact single-coordinate objective.
inline double univariate_objective(PenaltyKind kind, double b, double u, double v, double lambda,
                                   double gamma) {
  return 0.5 * v * b * b - u * b + penalty_value(kind, b, lambda, gamma);
}

}  // namespace detail

/// Exact minimizer of (v/2) b^2 - u b + p_lambda(b), v > 0. At v = 1 this is
/// the classical soft-threshold (lasso), three-piece SCAD rule and MCP firm
/// threshold; for smaller curvatures (weighted logistic sweeps) the global
/// minimum is picked among the per-piece stationary points and kinks.
inline double univariate_update(PenaltyKind kind, double u, double v, double lambda, double gamma) {
  if (kind == PenaltyKind::lasso) return soft_threshold(u, lambda) / v;

  const double sign = u < 0.0 ? -1.0 : 1.0;
  const double au = std::abs(u);
  double candidates[6];
  int count = 0;
  candidates[count++] = 0.0;
  candidates[count++] = soft_threshold(au, lambda) / v;  // inner piece
  candidates[count++] = au / v;                          // unpenalized piece
  if (kind == PenaltyKind::scad) {
    const double denom = v - 1.0 / (gamma - 1.0);
    if (denom > 0.0) candidates[count++] = soft_threshold(au, gamma * lambda / (gamma - 1.0)) / denom;
    candidates[count++] = lambda;
    candidates[count++] = gamma * lambda;
  } else {  // mcp
    const double denom = v - 1.0 / gamma;
    if (denom > 0.0) candidates[count++] = soft_threshold(au, lambda) / denom;
    candidates[count++] = gamma * lambda;
  }

  double best = 0.0;
  double best_val = detail::univariate_objective(kind, 0.0, au, v, lambda, gamma);
  for (int i = 1; i < count; ++i) {
    const double b = candidates[i];
    const double val = detail::univariate_objective(kind, b, au, v, lambda, gamma);
    if (val < best_val) {
      best_val = val;
      best = b;
    }
  }
  return sign * best;
}

}  // namespace soil
