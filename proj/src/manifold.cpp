#include "asrga/manifold.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "asrga/errors.hpp"
#include "asrga/rng.hpp"

namespace asrga {

std::string to_string(ManifoldKind k) {
  switch (k) {
    case ManifoldKind::Sphere: return "sphere";
    case ManifoldKind::Stiefel: return "stiefel";
    case ManifoldKind::OrthogonalGroup: return "orthogonal_group";
  }
  return "?";
}

void ManifoldSpec::validate() const {
  if (rows < 1 || cols < 1)
    throw ParameterError("manifold dimensions must be positive");
  if (cols > rows)
    throw ParameterError("manifold requires cols <= rows, got " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  switch (kind) {
    case ManifoldKind::Sphere:
      if (cols != 1) throw ParameterError("sphere requires cols == 1");
      if (rows < 2) throw ParameterError("sphere requires rows >= 2");
      break;
    case ManifoldKind::Stiefel:
      break;
    case ManifoldKind::OrthogonalGroup:
      if (cols != rows) throw ParameterError("orthogonal group requires cols == rows");
      break;
  }
}

ManifoldSpec ManifoldSpec::sphere(Eigen::Index n) {
  ManifoldSpec s{ManifoldKind::Sphere, n, 1, RetractionKind::Polar};
  s.validate();
  return s;
}

ManifoldSpec ManifoldSpec::stiefel(Eigen::Index n, Eigen::Index cols) {
  ManifoldSpec s{ManifoldKind::Stiefel, n, cols, RetractionKind::Polar};
  s.validate();
  return s;
}

ManifoldSpec ManifoldSpec::orthogonal_group(Eigen::Index n) {
  ManifoldSpec s{ManifoldKind::OrthogonalGroup, n, n, RetractionKind::Polar};
  s.validate();
  return s;
}

Manifold::Manifold(ManifoldSpec spec) : spec_(spec) { spec_.validate(); }

Eigen::Index Manifold::dim() const {
  const Eigen::Index n = spec_.rows, s = spec_.cols;
  return n * s - s * (s + 1) / 2;
}

double Manifold::orthonormality_residual(const Matrix& x) {
  return (x.transpose() * x - Matrix::Identity(x.cols(), x.cols())).norm();
}

Matrix Manifold::polar_factor(const Matrix& m) {
  if (m.cols() == 1) {
    const double nrm = m.norm();
    if (nrm <= 0.0 || !std::isfinite(nrm)) throw NumericError("polar factor of zero/non-finite vector");
    return m / nrm;
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().transpose();
}

Point Manifold::make_point(Matrix values) const {
  if (values.rows() != spec_.rows || values.cols() != spec_.cols)
    throw DimensionError("point shape " + std::to_string(values.rows()) + "x" +
                         std::to_string(values.cols()) + " does not match manifold " +
                         std::to_string(spec_.rows) + "x" + std::to_string(spec_.cols));
  if (!values.allFinite()) throw NumericError("point contains non-finite entries");
  const double r = orthonormality_residual(values);
  if (r <= kFeasAccept) return Point(std::move(values));
  if (r <= kFeasRepair) return Point(polar_factor(values));
  throw ParameterError("point infeasible: orthonormality residual " + std::to_string(r) +
                       " exceeds " + std::to_string(kFeasRepair));
}

Tangent Manifold::make_tangent(const Point& x, Matrix values) const {
  if (values.rows() != spec_.rows || values.cols() != spec_.cols)
    throw DimensionError("tangent shape does not match manifold");
  if (!values.allFinite()) throw NumericError("tangent contains non-finite entries");
  const Matrix sym = x.values().transpose() * values + values.transpose() * x.values();
  const double tol = kTangencyTol * std::max(1.0, values.norm());
  if (sym.norm() > tol)
    throw ParameterError("matrix is not tangent at the given point (residual " +
                         std::to_string(sym.norm()) + ")");
  return Tangent(x.values(), std::move(values));
}

Tangent Manifold::project_tangent(const Point& x, const Matrix& ambient) const {
  if (ambient.rows() != spec_.rows || ambient.cols() != spec_.cols)
    throw DimensionError("ambient shape does not match manifold");
  const Matrix xtd = x.values().transpose() * ambient;
  Matrix proj = ambient - x.values() * ((xtd + xtd.transpose()) * 0.5);
  return Tangent(x.values(), std::move(proj));
}

Matrix Manifold::polar_or_qr(const Matrix& y, bool* used_qr_fallback) {
  if (used_qr_fallback) *used_qr_fallback = false;
  if (y.cols() == 1) {
    const double nrm = y.norm();
    if (nrm <= 0.0) throw NumericError("retraction collapsed to the origin");
    return y / nrm;
  }
  Eigen::JacobiSVD<Matrix> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smax > 0.0 && smin > 1e-12 * smax) return svd.matrixU() * svd.matrixV().transpose();

  // Rank-deficient direction: thin QR with column signs pinned by diag(R).
  if (used_qr_fallback) *used_qr_fallback = true;
  Eigen::HouseholderQR<Matrix> qr(y);
  Matrix q = qr.householderQ() * Matrix::Identity(y.rows(), y.cols());
  const Matrix r = qr.matrixQR().topRows(y.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < y.cols(); ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

Point Manifold::retract(const Point& x, const Tangent& d, bool* used_qr_fallback) const {
  if (used_qr_fallback) *used_qr_fallback = false;
  if (d.values().rows() != spec_.rows || d.values().cols() != spec_.cols)
    throw DimensionError("tangent shape does not match manifold");
  if (d.values().isZero(0.0)) return x;  // exact zero step: identity, bitwise

  const Matrix y = x.values() + d.values();
  if (!y.allFinite()) throw NumericError("retraction argument non-finite");
  return Point(polar_or_qr(y, used_qr_fallback));
}

Point Manifold::random_point(std::uint64_t seed) const {
  Rng rng(seed);
  Matrix g = rng.gaussian_matrix(spec_.rows, spec_.cols);
  // A zero/rank-deficient Gaussian draw has probability zero, but keep
  // drawing rather than fail on adversarial seeds.
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) > 1e-12 * std::max(1.0, sv(0)))
      return Point(svd.matrixU() * svd.matrixV().transpose());
    g = rng.gaussian_matrix(spec_.rows, spec_.cols);
  }
  throw NumericError("random_point failed to draw a full-rank matrix");
}

}  // namespace asrga
