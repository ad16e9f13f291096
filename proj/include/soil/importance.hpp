#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "soil/candidates.hpp"
#include "soil/errors.hpp"

namespace soil {

/// Per-variable SOIL scores S_j in [0, 1].
struct ImportanceVector {
  Eigen::VectorXd s;
  std::vector<std::string> names;
};

/// S_j = sum_k w_k 1(j in A_k): the accumulated weight of the candidate
/// models containing variable j. Clipping to [0, 1] only absorbs float slack
/// (at most 1e-12).
inline ImportanceVector soil(const Eigen::VectorXd& w, const CandidateSet& cands,
                             std::vector<std::string> names = {}) {
  if (w.size() != static_cast<Eigen::Index>(cands.size()))
    fail(Errc::length_mismatch, "weight vector does not match candidate count");
  ImportanceVector imp;
  imp.s = Eigen::VectorXd::Zero(cands.p);
  for (Eigen::Index k = 0; k < w.size(); ++k)
    for (const int j : cands.models[static_cast<std::size_t>(k)].support) imp.s[j] += w[k];
  for (Eigen::Index j = 0; j < imp.s.size(); ++j)
    imp.s[j] = std::clamp(imp.s[j], 0.0, 1.0);
  imp.names = std::move(names);
  return imp;
}

struct SelectionReport {
  std::vector<int> selected;  // A_c = { j : S_j > c }, strict
  double threshold = 0.0;
  bool has_truth = false;
  int missed_true = 0;            // |A-bar_c|: true variables at or below c
  int over_selected = 0;          // |A-underline_c|: non-true variables above c
  int symmetric_difference = 0;   // |A_c nabla A*|
};

inline SelectionReport threshold_select(const ImportanceVector& imp, double c) {
  if (!(c > 0.0 && c < 1.0)) fail(Errc::bad_threshold, "threshold must lie in (0, 1)");
  SelectionReport report;
  report.threshold = c;
  for (Eigen::Index j = 0; j < imp.s.size(); ++j)
    if (imp.s[j] > c) report.selected.push_back(static_cast<int>(j));
  return report;
}

/// Variant with a known true support; fills the missed-true and
/// over-selected error counts.
inline SelectionReport threshold_select(const ImportanceVector& imp, double c,
                                        std::span<const int> true_support) {
  SelectionReport report = threshold_select(imp, c);
  report.has_truth = true;
  for (const int j : true_support)
    if (imp.s[j] <= c) ++report.missed_true;
  for (const int j : report.selected)
    if (std::find(true_support.begin(), true_support.end(), j) == true_support.end())
      ++report.over_selected;
  report.symmetric_difference = report.missed_true + report.over_selected;
  return report;
}

/// Indices by descending importance, ties broken by ascending index.
inline std::vector<int> rank_variables(const ImportanceVector& imp) {
  std::vector<int> order(static_cast<std::size_t>(imp.s.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return imp.s[a] > imp.s[b]; });
  return order;
}

}  // namespace soil
