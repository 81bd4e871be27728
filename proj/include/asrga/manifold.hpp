#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

namespace asrga {

using Matrix = Eigen::MatrixXd;

// Compact matrix manifolds { X in R^{n x s} : X^T X = I_s }.
//   Sphere          s = 1      (unit vectors)
//   Stiefel         1 <= s < n
//   OrthogonalGroup s = n
// All three share the same embedding, tangent projection and retraction; the
// kind tag exists for validation and reporting.
enum class ManifoldKind { Sphere, Stiefel, OrthogonalGroup };

enum class RetractionKind { Polar };

std::string to_string(ManifoldKind k);

struct ManifoldSpec {
  ManifoldKind kind = ManifoldKind::Sphere;
  Eigen::Index rows = 2;
  Eigen::Index cols = 1;
  RetractionKind retraction = RetractionKind::Polar;

  // Throws ParameterError unless (kind, rows, cols) are mutually consistent.
  void validate() const;

  static ManifoldSpec sphere(Eigen::Index n);
  static ManifoldSpec stiefel(Eigen::Index n, Eigen::Index s);
  static ManifoldSpec orthogonal_group(Eigen::Index n);

  bool operator==(const ManifoldSpec&) const = default;
};

class Manifold;

// A feasible point. Instances can only be minted by Manifold, which enforces
// the orthonormality invariant on construction.
class Point {
 public:
  const Matrix& values() const { return values_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }

 private:
  friend class Manifold;
  explicit Point(Matrix v) : values_(std::move(v)) {}
  Matrix values_;
};

// An element of the tangent space at a specific base point, validated at
// construction: || X^T D + D^T X ||_F <= tol * max(1, ||D||_F).
class Tangent {
 public:
  const Matrix& values() const { return values_; }
  const Matrix& base() const { return base_; }
  double norm() const { return values_.norm(); }

  Tangent scaled(double a) const { return Tangent(base_, a * values_); }

 private:
  friend class Manifold;
  Tangent(Matrix base, Matrix v) : base_(std::move(base)), values_(std::move(v)) {}
  Matrix base_;
  Matrix values_;
};

class Manifold {
 public:
  // Feasibility policy thresholds for make_point.
  static constexpr double kFeasAccept = 1e-8;  // accept as-is at or below
  static constexpr double kFeasRepair = 1e-4;  // re-orthonormalize at or below, reject above
  static constexpr double kTangencyTol = 1e-8;

  explicit Manifold(ManifoldSpec spec);

  const ManifoldSpec& spec() const { return spec_; }
  Eigen::Index rows() const { return spec_.rows; }
  Eigen::Index cols() const { return spec_.cols; }
  // Dimension of the tangent space.
  Eigen::Index dim() const;

  static double orthonormality_residual(const Matrix& x);

  // Residual <= kFeasAccept: wrap unchanged. <= kFeasRepair: replace with the
  // polar factor. Larger: ParameterError. Wrong shape: DimensionError.
  Point make_point(Matrix values) const;

  // Validates the tangency residual; throws ParameterError when it exceeds
  // kTangencyTol * max(1, ||values||_F).
  Tangent make_tangent(const Point& x, Matrix values) const;

  // Pi_X(D) = D - X sym(X^T D), sym(A) = (A + A^T)/2. Idempotent to rounding.
  Tangent project_tangent(const Point& x, const Matrix& ambient) const;

  // Polar retraction: the orthonormal factor of X + D via thin SVD. When
  // X + D is numerically rank deficient (smallest singular value below
  // 1e-12 times the largest) falls back to a QR factor with the R diagonal
  // signs fixed so the map stays deterministic. A zero tangent returns X
  // bitwise. Reports which branch ran through used_qr_fallback when asked.
  Point retract(const Point& x, const Tangent& d, bool* used_qr_fallback = nullptr) const;

  // Gaussian matrix from the given seed mapped through the polar factor.
  Point random_point(std::uint64_t seed) const;

  // Orthonormal factor of an arbitrary full-rank matrix (helper used by
  // generators and tests).
  static Matrix polar_factor(const Matrix& m);

  // The factor retract() uses: polar factor of y, or the sign-fixed thin QR
  // factor when y is numerically rank deficient (smallest singular value
  // below 1e-12 times the largest). For exact tangents (X + D)^T (X + D) =
  // I + D^T D >= I, so the QR branch only fires on degraded inputs.
  static Matrix polar_or_qr(const Matrix& y, bool* used_qr_fallback = nullptr);

 private:
  ManifoldSpec spec_;
};

}  // namespace asrga
