#include "asrga/metrics.hpp"

#include <cmath>

#include "asrga/errors.hpp"

namespace asrga {

double sdl_error(const Matrix& x, const Matrix& x_star) {
  if (x.rows() != x.cols() || x_star.rows() != x_star.cols() || x.rows() != x_star.rows())
    throw DimensionError("sdl_error requires two square matrices of equal size");
  const double tol = 1e-6;
  if (Manifold::orthonormality_residual(x) > tol ||
      Manifold::orthonormality_residual(x_star) > tol)
    throw ParameterError("sdl_error requires orthogonal inputs");
  const Matrix inner = (x.transpose() * x_star).cwiseAbs();
  double err = 0.0;
  for (Eigen::Index i = 0; i < inner.rows(); ++i)
    err += std::abs(inner.row(i).maxCoeff() - 1.0);
  return err;
}

double dpcp_error(const Matrix& x_alg, const Matrix& x_opt) {
  if (x_alg.cols() != 1 || x_opt.cols() != 1 || x_alg.rows() != x_opt.rows())
    throw DimensionError("dpcp_error requires two column vectors of equal size");
  const double tol = 1e-8;
  if (std::abs(x_alg.norm() - 1.0) > tol || std::abs(x_opt.norm() - 1.0) > tol)
    throw ParameterError("dpcp_error requires unit-norm inputs");
  const double c = std::abs((x_alg.transpose() * x_opt)(0, 0));
  return std::sqrt(std::max(0.0, 1.0 - std::min(c, 1.0) * std::min(c, 1.0)));
}

MetricFn metric_for(const ProblemInstance& inst) {
  if (!inst.ground_truth) return nullptr;
  if (inst.kind == ProblemKind::Sdl) {
    const Matrix gt = *inst.ground_truth;
    return [gt](const Matrix& x) { return sdl_error(x, gt); };
  }
  if (inst.kind == ProblemKind::Dpcp) {
    const Matrix gt = *inst.ground_truth;
    return [gt](const Matrix& x) { return dpcp_error(x, gt); };
  }
  return nullptr;
}

}  // namespace asrga
