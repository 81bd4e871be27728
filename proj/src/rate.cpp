#include "asrga/rate.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "asrga/errors.hpp"

namespace asrga {

RateStats rate_statistic(const std::vector<TraceRow>& rows, double p) {
  if (!(p > 0.0) || p > 1.0) throw ParameterError("exponent p must lie in (0, 1]");
  if (rows.empty()) throw UnavailableError("trace is empty");
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].k != static_cast<long>(i) + 1)
      throw UnavailableError("rate statistic requires stride-1 trace rows starting at k = 1");
  const long k_max = rows.back().k;
  RateStats st;
  st.k_min = RateStats::kMinIterations;
  if (k_max < 2 * st.k_min)
    throw UnavailableError("trace too short: need k >= " + std::to_string(2 * st.k_min) +
                           ", got " + std::to_string(k_max));
  st.k_mid = static_cast<long>(std::sqrt(static_cast<double>(st.k_min) * k_max));
  st.k_max = k_max;

  const double expo = 1.0 / (4.0 - p);
  // Sliding min of grad_norm over [floor(k/2), k] via a monotone index deque.
  std::deque<long> q;  // indices j with increasing grad_norm
  st.first_max = 0.0;
  st.tail_max = 0.0;
  for (long k = 1; k <= k_max; ++k) {
    const double gn = rows[static_cast<std::size_t>(k - 1)].grad_norm;
    while (!q.empty() && rows[static_cast<std::size_t>(q.back() - 1)].grad_norm > gn)
      q.pop_back();
    q.push_back(k);
    while (q.front() < k / 2) q.pop_front();
    if (k < st.k_min) continue;
    const double best = rows[static_cast<std::size_t>(q.front() - 1)].grad_norm;
    const double s = best * std::pow(static_cast<double>(k), expo);
    if (k <= st.k_mid)
      st.first_max = std::max(st.first_max, s);
    else
      st.tail_max = std::max(st.tail_max, s);
  }
  st.ratio = st.first_max > 0.0 ? st.tail_max / st.first_max
                                : (st.tail_max > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  st.flagged = st.ratio > RateStats::kRateThreshold;
  return st;
}

}  // namespace asrga
