#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace asrga {

// Pairwise (tree) summation with a fixed association order. Reduction order
// never depends on thread count or vector width, so accumulated penalty values
// are bit-reproducible across runs.
inline double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(std::span<const double>(v.data(), v.size()));
}

}  // namespace asrga
