#pragma once

#include <cstdint>
#include <json.hpp>
#include <random>
#include <string>
#include <vector>

#include "necrobifurc/params.hpp"

namespace necrobifurc::verify {

struct Options {
  std::uint64_t seed = 20240917;
  int jobs = 1;
  std::vector<std::string> suites;  ///< empty runs everything
  ModelParams base;                 ///< beta 1, sigma_ul 0.5, R0 0.5, R 2, chi 1, g_inv 1
  std::vector<double> betas{0.1, 1.0, 10.0};
  int l = 2;
  int oracle_n = 4096;
  int oracle_sets = 20;
  int random_draws = 200;
  int dual_path_draws = 100;
  int sequence_sets = 10;
  int n_r = 512;
  int n_theta = 256;
  /// Tightens one tolerance to zero so that the harness must report a failure.
  bool self_test_negative = false;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double seconds = 0.0;
  std::vector<std::string> messages;  ///< first few failures
  nlohmann::json detail = nlohmann::json::object();
};

struct Report {
  std::vector<SuiteResult> suites;
  bool passed = true;

  nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const Options& opt);
/// Throws Misuse for unknown suite names.
Report run(const Options& opt);

/// Parameter draw used by the randomised suites.
ModelParams draw_params(std::mt19937_64& rng);

/// Options from a JSON object; unknown keys are rejected with Misuse.
Options options_from_json(const nlohmann::json& j);

}  // namespace necrobifurc::verify
