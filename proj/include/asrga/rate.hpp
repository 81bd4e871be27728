#pragma once

#include <vector>

#include "asrga/trace.hpp"

namespace asrga {

// Decay-rate diagnostic for the bound grad_best(k) <= C / k^(1/(4-p)):
// s(k) = (min gradient norm over j in [floor(k/2), k]) * k^(1/(4-p)) must
// stay bounded, so the running maximum of s over a late block should not
// outgrow the maximum over an early block. Blocks split at the log-midpoint
// k_mid = floor(sqrt(k_min * k_max)): first = [k_min, k_mid], tail =
// (k_mid, k_max]. A genuinely non-decaying gradient (s ~ k^(1/(4-p))) then
// shows ratio (k_max/k_mid)^(1/(4-p)) = sqrt(k_max/k_min)^(1/(4-p)), well
// above the 1.5 threshold for traces an order of magnitude past k_min,
// while any bounded s keeps the ratio near 1.
struct RateStats {
  long k_min = 0;
  long k_mid = 0;
  long k_max = 0;
  double first_max = 0.0;
  double tail_max = 0.0;
  double ratio = 0.0;
  bool flagged = false;  // ratio > kRateThreshold: decay bound violated

  static constexpr double kRateThreshold = 1.5;
  static constexpr long kMinIterations = 100;
};

// Requires stride-1 rows starting at k = 1 covering k_max >= 2 * kMinIterations.
RateStats rate_statistic(const std::vector<TraceRow>& rows, double p);

}  // namespace asrga
