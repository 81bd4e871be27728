#pragma once

#include <string>
#include <vector>

#include "asrga/problems.hpp"
#include "asrga/solvers.hpp"
#include "asrga/synthetic.hpp"

namespace asrga {

// Parsed run configuration. The file format is JSON with strict key
// checking: any unknown key raises ConfigError naming the section and key.
// See README for the full schema.
struct RunConfig {
  // problem section
  ProblemKind kind = ProblemKind::Sdl;
  double p = 0.5;
  Eigen::Index n = 10, s = 1, m = 0;
  Eigen::Index inliers = 0, outliers = 0;
  double theta = 0.5;
  double noise = 0.0;
  double lambda = 0.5;
  double alpha = 0.0;
  std::string data_file;          // optional: load the data matrix from disk
  std::string ground_truth_file;  // optional companion

  std::vector<std::string> solvers;  // subset of {asrga, rssd, naive_adagrad}
  AsrgaConfig asrga;                 // shared budgets already merged in
  RssdConfig rssd;
  std::uint64_t seed = 0;
  std::string out_dir = "out";

  void validate() const;
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Problem materialization: file-based when data_file is set, synthetic
// protocol generation otherwise (generic Gaussian data for nonneg_orth,
// which has no benchmark protocol).
ProblemInstance instance_from_config(const RunConfig& cfg);

// Spec for `gen`: same keys as the problem section of a run config.
SyntheticSpec parse_synthetic_spec(const std::string& json_text);
SyntheticSpec load_synthetic_spec(const std::string& path);

// Initial-iterate seed derived from the config seed so that data generation
// and the starting point consume independent streams.
std::uint64_t x0_seed(std::uint64_t config_seed);

}  // namespace asrga
