#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asrga/composite.hpp"

namespace asrga {

enum class ProblemKind { Spca, Dpcp, Sdl, NonnegOrth };

std::string to_string(ProblemKind k);
ProblemKind problem_kind_from_string(const std::string& name);

// A concrete problem: the data matrix plus everything needed to build the
// composite objective. ground_truth holds X* (SDL) or the hyperplane normal b
// (DPCP) when known, enabling recovery metrics. notes carries advisory
// messages (exact-penalty threshold, p-range warnings) for the front end to
// surface.
struct ProblemInstance {
  ProblemKind kind = ProblemKind::Spca;
  ManifoldSpec manifold;
  double p = 1.0;
  Matrix data;    // A (SPCA, NonnegOrth) | E rows-as-points (DPCP) | Y (SDL)
  double weight = 1.0;  // lambda (SPCA) | alpha (NonnegOrth) | unused otherwise
  std::optional<Matrix> ground_truth;
  std::vector<std::string> notes;
};

// min_X -1/2 tr(X^T A A^T X) + lambda sum_ij phi(X_ij)^p on the Stiefel
// manifold; phi = | . |.
ProblemInstance make_spca(Matrix a, Eigen::Index s, double lambda, double p);

// min_x sum_i phi((E x)_i)^p on the sphere; rows of e are data points.
ProblemInstance make_dpcp(Matrix e, double p);

// min_X (1/m) sum over entries of Y^T X of phi(.)^p on the orthogonal group,
// m = number of samples (columns of y).
ProblemInstance make_sdl(Matrix y, double p);

// min_X -1/2 tr(X^T A A^T X) + alpha sum_ij phi_plus(-X_ij)^p on Stiefel:
// exact penalty for the nonnegativity constraint X >= 0.
ProblemInstance make_nonneg_orth(Matrix a, Eigen::Index s, double alpha, double p);

// Exact-penalty threshold 5 Q s^(3/4) with Q = max feasible ||grad g||_F.
double nonneg_orth_alpha_threshold(const Matrix& a, Eigen::Index s);

// The composite objective for an instance.
CompositeProblem build_problem(const ProblemInstance& inst);

// Hyperparameters consumed by make_instance; fields not meaningful for a kind
// are ignored.
struct InstanceDims {
  Eigen::Index n = 0;
  Eigen::Index s = 1;
  Eigen::Index m = 0;  // samples (SPCA/SDL) or data rows (DPCP); 0 = kind default
};

struct InstanceHyperparams {
  double p = 0.5;
  double lambda = 0.5;
  double alpha = 0.0;  // 0 = use the exact-penalty threshold plus a margin
};

// Generic random instance of the given kind (Gaussian data), used by the
// gradient/property checks. Protocol-faithful synthetic data with ground
// truth lives in the bench generators.
ProblemInstance make_instance(ProblemKind kind, const InstanceDims& dims,
                              const InstanceHyperparams& hyper, std::uint64_t seed);

}  // namespace asrga
