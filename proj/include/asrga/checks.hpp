#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asrga/rate.hpp"

namespace asrga {

// One verified property: its name, outcome, the measured slack (distance to
// the tolerance; negative slack means violation), and a short detail line.
struct CheckResult {
  std::string name;
  bool pass = false;
  double slack = 0.0;
  std::string detail;
};

bool all_pass(const std::vector<CheckResult>& results);

// Smoothing kernel axiom grids (positivity floor, mu-Lipschitzness,
// derivative bound, scaled derivative Lipschitzness, finite-difference
// consistency, limit behavior) for both kernels.
std::vector<CheckResult> check_smoothing();

// Manifold geometry: tangency, contraction, retraction feasibility, zero-step
// identity, first-order Taylor test, frozen-value examples.
std::vector<CheckResult> check_manifolds();

// Analytic-vs-finite-difference gradients on all four problem kinds plus
// Riemannian tangency. corrupt_gradient injects a deliberate bias into one
// analytic gradient so the suite must fail (negative-control hook).
std::vector<CheckResult> check_gradients(bool corrupt_gradient = false);

// Rate statistic on a deterministic in-process ASRGA run (SDL n = 10,
// p = 0.5, 1000 iterations) or on externally supplied trace rows, plus the
// synthetic positive/negative controls.
std::vector<CheckResult> check_rate(const std::optional<std::vector<TraceRow>>& rows,
                                    double p = 0.5);

}  // namespace asrga
