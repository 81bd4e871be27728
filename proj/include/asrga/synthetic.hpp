#pragma once

#include <cstdint>
#include <string>

#include "asrga/problems.hpp"

namespace asrga {

enum class SyntheticKind { SdlBernoulliGaussian, DpcpInlierOutlier, SpcaGaussian };

std::string to_string(SyntheticKind k);
SyntheticKind synthetic_kind_from_string(const std::string& name);

// Benchmark data protocols. SDL: Y = X* S with X* a random orthogonal
// dictionary and S Bernoulli(theta)-Gaussian, m defaults to floor(10 n^1.5).
// DPCP: rows of E are inlier points on the unit sphere of a random hyperplane
// {x : <b, x> = 0} perturbed by Gaussian noise, plus outliers uniform on the
// full sphere; ground truth is the normal b. SPCA: Gaussian data with
// sample-mean subtraction and row normalization.
struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::SdlBernoulliGaussian;
  Eigen::Index n = 10;
  Eigen::Index s = 1;        // SPCA components
  Eigen::Index m = 0;        // samples; 0 = kind default
  Eigen::Index inliers = 0;  // DPCP
  Eigen::Index outliers = 0; // DPCP
  double theta = 0.5;        // SDL Bernoulli parameter
  double noise = 0.0;        // DPCP inlier noise level
  double p = 0.5;
  double lambda = 0.5;       // SPCA
  std::uint64_t seed = 0;

  void validate() const;
};

ProblemInstance generate(const SyntheticSpec& spec);

}  // namespace asrga
