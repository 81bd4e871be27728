#pragma once

#include "asrga/problems.hpp"
#include "asrga/solvers.hpp"

namespace asrga {

// Dictionary recovery error: sum_i | max_j |<x_i, x*_j>| - 1 | over columns.
// Zero exactly when x equals x_star up to column permutation and signs.
double sdl_error(const Matrix& x, const Matrix& x_star);

// Detection error sqrt(1 - <x_alg, x_opt>^2) in [0, 1]; sign-invariant.
double dpcp_error(const Matrix& x_alg, const Matrix& x_opt);

// Recovery metric against the instance's ground truth (SDL, DPCP); empty when
// the instance has none or the kind has no recovery notion.
MetricFn metric_for(const ProblemInstance& inst);

}  // namespace asrga
