#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "soil/errors.hpp"

namespace soil {

enum class Task { regression, classification };

inline const char* task_name(Task t) {
  return t == Task::regression ? "regression" : "classification";
}

/// An n x p design matrix with its response. Responses are real for
/// regression and {0,1} for classification.
struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  Task task = Task::regression;
  std::vector<std::string> names;

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index p() const { return X.cols(); }

  static std::vector<std::string> default_names(Eigen::Index p) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) out.push_back("X" + std::to_string(j + 1));
    return out;
  }

  void validate() const {
    if (X.rows() < 2) fail(Errc::invalid_dataset, "need at least 2 rows");
    if (X.cols() < 1) fail(Errc::invalid_dataset, "need at least 1 predictor");
    if (y.size() != X.rows()) fail(Errc::invalid_dataset, "response length does not match rows");
    if (!X.allFinite()) fail(Errc::invalid_dataset, "non-finite entry in design matrix");
    if (!y.allFinite()) fail(Errc::invalid_dataset, "non-finite entry in response");
    if (!names.empty() && names.size() != static_cast<std::size_t>(X.cols()))
      fail(Errc::invalid_dataset, "column name count does not match predictors");
    if (task == Task::classification) {
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] != 0.0 && y[i] != 1.0)
          fail(Errc::non_binary_response,
               "classification response must be 0 or 1 (row " + std::to_string(i + 1) + ")");
      }
    }
  }

  std::vector<std::string> column_names() const {
    return names.empty() ? default_names(p()) : names;
  }
};

}  // namespace soil
