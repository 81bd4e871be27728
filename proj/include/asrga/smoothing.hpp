#pragma once

#include <string>

namespace asrga {

// Smooth surrogates phi~_mu for the nonsmooth penalty kernels phi. Both
// kernels satisfy, for every mu in (0, 1]:
//
//   (ii)  phi~_mu(t) >= sigma * mu             (strict positivity)
//   (iii) t -> phi~_mu(t) is differentiable with |phi~_mu'| <= M_phi
//   (iv)  phi~_mu' is Lipschitz with constant L_phi / mu
//   (v)   mu -> phi~_mu(t) is nondecreasing and
//         phi~_mu1(t) - phi~_mu2(t) <= kappa (mu1 - mu2) for mu2 <= mu1
//   (vi)  phi~_mu(t) -> phi(t) as mu -> 0
//
// Abs smooths phi(t) = |t| (Huber-style), Plus smooths phi(t) = max(t, 0).
enum class SmoothingKernel { Abs, Plus };

struct KernelConstants {
  double sigma;
  double kappa;
  double M_phi;
  double L_phi;
};

std::string to_string(SmoothingKernel k);
SmoothingKernel kernel_from_string(const std::string& name);

// The nonsmooth target phi.
double kernel_target(SmoothingKernel k, double t);

// phi~_mu(t); throws ParameterError unless mu > 0 and finite.
double kernel_value(SmoothingKernel k, double t, double mu);

// d/dt phi~_mu(t); same mu contract.
double kernel_derivative(SmoothingKernel k, double t, double mu);

KernelConstants kernel_constants(SmoothingKernel k);

}  // namespace asrga
