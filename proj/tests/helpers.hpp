#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles here
// deliberately avoid the library's solve paths: dense normal equations go
// through Gauss-Jordan elimination, objectives are evaluated from their
// definitions.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "soil/rng.hpp"
#include "soil/types.hpp"

namespace testkit {

// Gauss-Jordan with partial pivoting; independent of Eigen's decompositions.
inline Eigen::VectorXd gauss_jordan_solve(Eigen::MatrixXd A, Eigen::VectorXd b) {
  const Eigen::Index n = A.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::abs(A(r, col)) > std::abs(A(pivot, col))) pivot = r;
    A.row(col).swap(A.row(pivot));
    std::swap(b[col], b[pivot]);
    const double d = A(col, col);
    A.row(col) /= d;
    b[col] /= d;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = A(r, col);
      if (f != 0.0) {
        A.row(r) -= f * A.row(col);
        b[r] -= f * b[col];
      }
    }
  }
  return b;
}

// OLS with intercept via explicit normal equations + Gauss-Jordan.
inline Eigen::VectorXd normal_equations_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  Eigen::MatrixXd A(X.rows(), X.cols() + 1);
  A.col(0).setOnes();
  A.rightCols(X.cols()) = X;
  return gauss_jordan_solve(A.transpose() * A, A.transpose() * y);
}

inline Eigen::MatrixXd random_matrix(soil::Rng& rng, int n, int p) {
  Eigen::MatrixXd X(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) X(i, j) = rng.normal();
  return X;
}

// Columns exactly mean-zero and orthonormal in the (1/n) X'X = I sense, so
// the lasso path on them has the closed form soft_threshold(X_j'y / n, lambda).
inline Eigen::MatrixXd orthonormal_design(soil::Rng& rng, int n, int p) {
  Eigen::MatrixXd X = random_matrix(rng, n, p);
  for (int j = 0; j < p; ++j) {
    X.col(j).array() -= X.col(j).mean();
    for (int k = 0; k < j; ++k) X.col(j) -= X.col(k).dot(X.col(j)) * X.col(k);
    X.col(j) /= X.col(j).norm();
  }
  return X * std::sqrt(static_cast<double>(n));
}

inline soil::Dataset random_regression(soil::Rng& rng, int n, int p, double noise = 1.0) {
  soil::Dataset d;
  d.X = random_matrix(rng, n, p);
  Eigen::VectorXd beta(p);
  for (int j = 0; j < p; ++j) beta[j] = rng.normal();
  d.y = d.X * beta;
  for (int i = 0; i < n; ++i) d.y[i] += noise * rng.normal();
  d.task = soil::Task::regression;
  return d;
}

inline soil::Dataset random_classification(soil::Rng& rng, int n, int p, double scale = 1.0) {
  soil::Dataset d;
  d.X = random_matrix(rng, n, p);
  Eigen::VectorXd beta(p);
  for (int j = 0; j < p; ++j) beta[j] = scale * rng.normal();
  const Eigen::VectorXd eta = d.X * beta;
  d.y.resize(n);
  for (int i = 0; i < n; ++i) {
    const double prob = 1.0 / (1.0 + std::exp(-eta[i]));
    d.y[i] = rng.bernoulli(prob) ? 1.0 : 0.0;
  }
  d.task = soil::Task::classification;
  return d;
}

// Guarantees both classes appear.
inline soil::Dataset random_classification_balanced(soil::Rng& rng, int n, int p,
                                                    double scale = 1.0) {
  while (true) {
    soil::Dataset d = random_classification(rng, n, p, scale);
    const double m = d.y.mean();
    if (m > 0.0 && m < 1.0) return d;
  }
}

}  // namespace testkit
