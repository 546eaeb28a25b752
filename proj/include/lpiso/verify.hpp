#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lpiso/exponent.hpp"
#include "lpiso/io.hpp"

namespace lpiso {

struct Tolerances {
  double acceptance = 1e-9;
  double internal = 1e-12;
};

struct RunConfig {
  std::string suite = "all";
  std::vector<double> p_list{1.0, 1.5, 2.0, 3.0};
  int d = 1;
  NormExponent q = 2.0;
  int trials = 100;
  std::uint64_t seed = 42;
  Tolerances tol;
  std::string out;
  bool timestamp = true;
  int samples = 101;
};

/// Overlays the fields present in `j` onto `base`. Throws ParseError /
/// InvalidArgument on malformed input.
RunConfig parse_run_config(const json& j, RunConfig base = {});
/// Throws InvalidArgument unless trials >= 1, d >= 1 and p_list is non-empty.
void validate(const RunConfig& cfg);

struct TrialFailure {
  int trial = 0;
  double p = 0.0;
  double error = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  int trials = 0;
  std::vector<TrialFailure> failures;  ///< sorted by trial
  double max_error = 0.0;
};

/// Suite names accepted by run_suite, without "all".
const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);

/// Runs trial k = 0..trials-1 of one suite with p = p_list[k % size] and the
/// trial seed derive_seed(seed, suite, k). Throws InvalidArgument on an unknown name.
SuiteReport run_suite(std::string_view name, const RunConfig& cfg);

/// Runs cfg.suite (or every suite for "all") and builds the JSON report.
/// `passed` is set to whether no trial failed.
json run_verify(const RunConfig& cfg, bool& passed);

}  // namespace lpiso
