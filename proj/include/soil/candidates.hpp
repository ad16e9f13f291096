#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "soil/errors.hpp"
#include "soil/path.hpp"

namespace soil {

/// Description-length prior on model size: C_k = s log(e p / s) + 2 log(s+2),
/// extended to the empty model by its s -> 0 limit C_0 = 2 log 2.
inline double complexity_prior(int s, int p) {
  if (s == 0) return 2.0 * std::log(2.0);
  const double sd = static_cast<double>(s);
  return sd * std::log(std::numbers::e * static_cast<double>(p) / sd) + 2.0 * std::log(sd + 2.0);
}

struct CandidateModel {
  std::vector<int> support;  // sorted ascending, unique, within [0, p)
  double complexity = 0.0;   // C_k for the ambient dimension of its set

  int size() const { return static_cast<int>(support.size()); }
  bool contains(int j) const { return std::binary_search(support.begin(), support.end(), j); }
};

/// Deduplicated candidate supports in deterministic (size, lexicographic)
/// order.
struct CandidateSet {
  std::vector<CandidateModel> models;
  int p = 0;

  std::size_t size() const { return models.size(); }
};

namespace detail {

inline bool support_order(const CandidateModel& a, const CandidateModel& b) {
  if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
  return a.support < b.support;
}

inline CandidateSet finalize_set(std::vector<std::vector<int>> supports, int p) {
  std::vector<CandidateModel> models;
  models.reserve(supports.size());
  for (auto& s : supports) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (const int j : s)
      if (j < 0 || j >= p) fail(Errc::dimension_mismatch, "support index out of range");
    models.push_back({std::move(s), 0.0});
  }
  std::sort(models.begin(), models.end(), support_order);
  models.erase(std::unique(models.begin(), models.end(),
                           [](const CandidateModel& a, const CandidateModel& b) {
                             return a.support == b.support;
                           }),
               models.end());
  for (auto& m : models) m.complexity = complexity_prior(m.size(), p);
  return {std::move(models), p};
}

}  // namespace detail

/// One candidate per distinct support along the path.
inline CandidateSet extract_supports(const SolutionPath& path, int p) {
  if (path.entries.empty()) fail(Errc::config_invalid, "empty solution path");
  std::vector<std::vector<int>> supports;
  supports.reserve(path.entries.size());
  for (const auto& entry : path.entries) {
    std::vector<int> s;
    for (Eigen::Index j = 0; j < entry.coefficients.size(); ++j)
      if (entry.coefficients[j] != 0.0) s.push_back(static_cast<int>(j));
    supports.push_back(std::move(s));
  }
  return detail::finalize_set(std::move(supports), p);
}

/// Union with dedup. Supports larger than max_support_size are dropped
/// (callers pass floor(n/2) - 2 so the half-data ARM fits stay well-posed);
/// a negative cap keeps everything.
inline CandidateSet merge_sets(std::span<const CandidateSet> sets, int max_support_size = -1) {
  if (sets.empty()) fail(Errc::config_invalid, "no candidate sets to merge");
  const int p = sets.front().p;
  std::vector<std::vector<int>> supports;
  for (const auto& set : sets) {
    if (set.p != p) fail(Errc::dimension_mismatch, "candidate sets disagree on dimension");
    for (const auto& m : set.models) {
      if (max_support_size >= 0 && m.size() > max_support_size) continue;
      supports.push_back(m.support);
    }
  }
  if (supports.empty()) fail(Errc::no_fittable_candidate, "support-size cap removed every model");
  return detail::finalize_set(std::move(supports), p);
}

/// All 2^p supports including the empty model; guarded at p <= 20.
inline CandidateSet all_subsets(int p) {
  if (p > 20) fail(Errc::too_large, "all-subsets enumeration capped at p = 20");
  if (p < 1) fail(Errc::config_invalid, "need p >= 1");
  std::vector<std::vector<int>> supports;
  supports.reserve(std::size_t{1} << p);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
    std::vector<int> s;
    for (int j = 0; j < p; ++j)
      if (mask & (std::uint64_t{1} << j)) s.push_back(j);
    supports.push_back(std::move(s));
  }
  return detail::finalize_set(std::move(supports), p);
}

}  // namespace soil
