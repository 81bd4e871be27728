#include "asrga/smoothing.hpp"

#include <cmath>

#include "asrga/errors.hpp"

namespace asrga {

namespace {

void require_mu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw ParameterError("smoothing parameter mu must be positive and finite, got " +
                         std::to_string(mu));
}

double abs_value(double t, double mu) {
  const double a = std::abs(t);
  return a > mu ? a : t * t / (2.0 * mu) + 0.5 * mu;
}

double abs_derivative(double t, double mu) {
  if (t > mu) return 1.0;
  if (t < -mu) return -1.0;
  return t / mu;
}

}  // namespace

std::string to_string(SmoothingKernel k) {
  return k == SmoothingKernel::Abs ? "abs" : "plus";
}

SmoothingKernel kernel_from_string(const std::string& name) {
  if (name == "abs") return SmoothingKernel::Abs;
  if (name == "plus") return SmoothingKernel::Plus;
  throw ParameterError("unknown smoothing kernel '" + name + "' (expected abs or plus)");
}

double kernel_target(SmoothingKernel k, double t) {
  return k == SmoothingKernel::Abs ? std::abs(t) : std::max(t, 0.0);
}

double kernel_value(SmoothingKernel k, double t, double mu) {
  require_mu(mu);
  if (k == SmoothingKernel::Abs) return abs_value(t, mu);
  // max(t, 0) = (|t| + t) / 2; the mu/4 shift keeps the surrogate above
  // sigma * mu and monotone in mu.
  return 0.5 * (abs_value(t, mu) + t) + 0.25 * mu;
}

double kernel_derivative(SmoothingKernel k, double t, double mu) {
  require_mu(mu);
  if (k == SmoothingKernel::Abs) return abs_derivative(t, mu);
  return 0.5 * (abs_derivative(t, mu) + 1.0);
}

KernelConstants kernel_constants(SmoothingKernel k) {
  if (k == SmoothingKernel::Abs) return {0.5, 0.5, 1.0, 1.0};
  return {0.25, 0.5, 1.0, 0.5};
}

}  // namespace asrga
