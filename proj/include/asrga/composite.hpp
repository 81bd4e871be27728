#pragma once

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asrga/manifold.hpp"
#include "asrga/smoothing.hpp"

namespace asrga {

// Smooth term g of the composite objective. Evaluation happens on raw
// ambient matrices; feasibility is the caller's concern. lipschitz() /
// grad_bound() return L_g and M_g (gradient Lipschitz constant and gradient
// norm bound over the manifold) when the instance knows them.
class SmoothPart {
 public:
  virtual ~SmoothPart() = default;
  virtual double value(const Matrix& x) const = 0;
  virtual Matrix gradient(const Matrix& x) const = 0;
  virtual std::optional<double> lipschitz() const { return std::nullopt; }
  virtual std::optional<double> grad_bound() const { return std::nullopt; }
};

class ZeroSmoothPart final : public SmoothPart {
 public:
  explicit ZeroSmoothPart(Eigen::Index rows, Eigen::Index cols) : rows_(rows), cols_(cols) {}
  double value(const Matrix&) const override { return 0.0; }
  Matrix gradient(const Matrix&) const override { return Matrix::Zero(rows_, cols_); }
  std::optional<double> lipschitz() const override { return 0.0; }
  std::optional<double> grad_bound() const override { return 0.0; }

 private:
  Eigen::Index rows_, cols_;
};

// g(X) = -(c/2) tr(X^T M X) with M symmetric positive semidefinite.
// Gradient -c M X; on { X : X^T X = I_s } the gradient norm is bounded by
// c ||M||_2 sqrt(s) and the Euclidean Lipschitz constant is c ||M||_2.
class NegativeQuadraticPart final : public SmoothPart {
 public:
  NegativeQuadraticPart(Matrix m, double c, Eigen::Index manifold_cols);
  double value(const Matrix& x) const override;
  Matrix gradient(const Matrix& x) const override;
  std::optional<double> lipschitz() const override { return lip_; }
  std::optional<double> grad_bound() const override { return bound_; }

 private:
  Matrix m_;
  double c_;
  double lip_;
  double bound_;
};

// A family of penalty terms sharing one weight. values() writes h_i(X) for
// every term in the block; accumulate_gradient() adds
// sum_i coeff_i * grad h_i(X) into g for caller-supplied coefficients.
class PenaltyBlock {
 public:
  virtual ~PenaltyBlock() = default;
  virtual Eigen::Index count() const = 0;
  virtual double weight() const = 0;
  virtual void values(const Matrix& x, Eigen::VectorXd& h) const = 0;
  virtual void accumulate_gradient(const Matrix& x, const Eigen::VectorXd& coeff,
                                   Matrix& g) const = 0;
  virtual double max_grad_norm() const = 0;  // M_h over the block
  virtual double grad_lipschitz() const = 0; // L_h over the block
};

// h_t(X) = (C^T X)_(i,j) for t = i + C.cols() * j, i.e. every entry of the
// linear image C^T X is one penalty term. grad h_t = C e_i e_j^T, so the
// block gradient assembles as C * Psi with Psi the coefficient matrix. All
// four shipped problem instances reduce to this block.
class EntryLinearPenalty final : public PenaltyBlock {
 public:
  EntryLinearPenalty(Matrix c, Eigen::Index manifold_cols, double weight);
  Eigen::Index count() const override { return c_.cols() * cols_; }
  double weight() const override { return weight_; }
  void values(const Matrix& x, Eigen::VectorXd& h) const override;
  void accumulate_gradient(const Matrix& x, const Eigen::VectorXd& coeff,
                           Matrix& g) const override;
  double max_grad_norm() const override { return max_col_norm_; }
  double grad_lipschitz() const override { return 0.0; }
  const Matrix& coefficient_matrix() const { return c_; }

 private:
  Matrix c_;
  Eigen::Index cols_;
  double weight_;
  double max_col_norm_;
};

// Constants plugged into the smoothed-objective curvature bounds.
struct TheoryConstants {
  double W;     // sum of penalty weights
  double L1;    // p W sigma^(p-1) M_phi
  double L2;    // p W sigma^(p-2) M_h^2 (sigma L_phi + (1-p) M_phi^2)
  double L_mu;  // L_g + L1 L_h mu^(p-1) + L2 mu^(p-2)
  double M_mu;  // M_g + L1 M_h mu^(p-1)
};

// f(X) = g(X) + sum_i w_i phi(h_i(X))^p with p in (0, 1], evaluated through
// the smoothed surrogate f~_mu = g + sum_i w_i phi~_mu(h_i)^p.
class CompositeProblem {
 public:
  CompositeProblem(ManifoldSpec manifold, double p, SmoothingKernel kernel,
                   std::shared_ptr<const SmoothPart> smooth,
                   std::vector<std::shared_ptr<const PenaltyBlock>> blocks);

  const Manifold& manifold() const { return manifold_; }
  double p() const { return p_; }
  SmoothingKernel kernel() const { return kernel_; }
  Eigen::Index term_count() const { return term_count_; }
  double total_weight() const { return total_weight_; }  // W

  // Smoothed objective and its gradients. Raw-matrix variants evaluate at an
  // arbitrary ambient matrix (used by finite differencing); Point variants
  // guarantee a feasible argument.
  double smoothed_value_raw(const Matrix& x, double mu) const;
  double smoothed_value(const Point& x, double mu) const;
  double true_value(const Point& x) const;
  Matrix euclidean_gradient_raw(const Matrix& x, double mu) const;
  Matrix euclidean_gradient(const Point& x, double mu) const;
  Tangent riemannian_gradient(const Point& x, double mu) const;

  // True when every part can report smoothness data, enabling
  // theory_constants(); otherwise that call throws UnavailableError.
  bool has_constants() const;
  TheoryConstants theory_constants(double mu) const;

  // Bound on |f~_mu1 - f~_mu2| over the manifold, valid for mu2 <= mu1:
  // W kappa sigma^(p-1) (mu1/mu2)^(1-p) (mu1^p - mu2^p).
  double value_gap_bound(double mu1, double mu2) const;

  // f~_mu(X) - g(X) >= this for every feasible X (strict penalty floor).
  double penalty_floor(double mu) const;

 private:
  void validate_mu(double mu) const;

  Manifold manifold_;
  double p_;
  SmoothingKernel kernel_;
  std::shared_ptr<const SmoothPart> smooth_;
  std::vector<std::shared_ptr<const PenaltyBlock>> blocks_;
  Eigen::Index term_count_;
  double total_weight_;
  double max_grad_norm_;   // M_h across blocks
  double grad_lipschitz_;  // L_h across blocks
};

// Entrywise central differences of f~_mu in the ambient space.
Matrix fd_euclidean_gradient(const CompositeProblem& prob, const Point& x, double mu,
                             double step);

// Retraction-based directional derivative (f~(R_X(t D)) - f~(R_X(-t D))) / 2t.
double fd_directional_derivative(const CompositeProblem& prob, const Point& x,
                                 const Tangent& d, double mu, double step);

}  // namespace asrga
