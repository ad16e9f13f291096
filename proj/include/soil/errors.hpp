#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace soil {

enum class Errc {
  invalid_dataset,
  rank_deficient,
  too_many_variables,
  one_class_only,
  non_finite,
  dimension_mismatch,
  too_large,
  all_infinite,
  no_fittable_candidate,
  length_mismatch,
  bad_threshold,
  bad_rho,
  config_invalid,
  parse_error,
  missing_column,
  non_binary_response,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_dataset: return "invalid_dataset";
    case Errc::rank_deficient: return "rank_deficient";
    case Errc::too_many_variables: return "too_many_variables";
    case Errc::one_class_only: return "one_class_only";
    case Errc::non_finite: return "non_finite";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::too_large: return "too_large";
    case Errc::all_infinite: return "all_infinite";
    case Errc::no_fittable_candidate: return "no_fittable_candidate";
    case Errc::length_mismatch: return "length_mismatch";
    case Errc::bad_threshold: return "bad_threshold";
    case Errc::bad_rho: return "bad_rho";
    case Errc::config_invalid: return "config_invalid";
    case Errc::parse_error: return "parse_error";
    case Errc::missing_column: return "missing_column";
    case Errc::non_binary_response: return "non_binary_response";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace soil
