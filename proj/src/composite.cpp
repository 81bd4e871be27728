#include "asrga/composite.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "asrga/errors.hpp"
#include "asrga/numeric.hpp"

namespace asrga {

NegativeQuadraticPart::NegativeQuadraticPart(Matrix m, double c, Eigen::Index manifold_cols)
    : m_(std::move(m)), c_(c) {
  if (m_.rows() != m_.cols()) throw DimensionError("quadratic part requires a square matrix");
  if (!((m_ - m_.transpose()).norm() <= 1e-10 * std::max(1.0, m_.norm())))
    throw ParameterError("quadratic part requires a symmetric matrix");
  if (!(c_ > 0.0)) throw ParameterError("quadratic coefficient must be positive");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m_, Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
  lip_ = c_ * top;
  bound_ = c_ * top * std::sqrt(static_cast<double>(manifold_cols));
}

double NegativeQuadraticPart::value(const Matrix& x) const {
  return -0.5 * c_ * (x.array() * (m_ * x).array()).sum();
}

Matrix NegativeQuadraticPart::gradient(const Matrix& x) const { return -c_ * (m_ * x); }

EntryLinearPenalty::EntryLinearPenalty(Matrix c, Eigen::Index manifold_cols, double weight)
    : c_(std::move(c)), cols_(manifold_cols), weight_(weight) {
  if (c_.size() == 0) throw DimensionError("penalty coefficient matrix is empty");
  if (!(weight_ > 0.0) || !std::isfinite(weight_))
    throw ParameterError("penalty weight must be positive and finite");
  max_col_norm_ = 0.0;
  for (Eigen::Index j = 0; j < c_.cols(); ++j)
    max_col_norm_ = std::max(max_col_norm_, c_.col(j).norm());
}

void EntryLinearPenalty::values(const Matrix& x, Eigen::VectorXd& h) const {
  const Matrix z = c_.transpose() * x;  // (terms x manifold_cols)
  h = Eigen::Map<const Eigen::VectorXd>(z.data(), z.size());
}

void EntryLinearPenalty::accumulate_gradient(const Matrix& x, const Eigen::VectorXd& coeff,
                                             Matrix& g) const {
  (void)x;
  const Eigen::Map<const Matrix> psi(coeff.data(), c_.cols(), cols_);
  g.noalias() += c_ * psi;
}

CompositeProblem::CompositeProblem(ManifoldSpec manifold, double p, SmoothingKernel kernel,
                                   std::shared_ptr<const SmoothPart> smooth,
                                   std::vector<std::shared_ptr<const PenaltyBlock>> blocks)
    : manifold_(manifold),
      p_(p),
      kernel_(kernel),
      smooth_(std::move(smooth)),
      blocks_(std::move(blocks)) {
  if (!(p_ > 0.0) || p_ > 1.0)
    throw ParameterError("exponent p must lie in (0, 1], got " + std::to_string(p_));
  if (!smooth_) throw ParameterError("composite problem requires a smooth part");
  term_count_ = 0;
  total_weight_ = 0.0;
  max_grad_norm_ = 0.0;
  grad_lipschitz_ = 0.0;
  for (const auto& b : blocks_) {
    if (!b) throw ParameterError("null penalty block");
    term_count_ += b->count();
    total_weight_ += static_cast<double>(b->count()) * b->weight();
    max_grad_norm_ = std::max(max_grad_norm_, b->max_grad_norm());
    grad_lipschitz_ = std::max(grad_lipschitz_, b->grad_lipschitz());
  }
}

void CompositeProblem::validate_mu(double mu) const {
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw ParameterError("mu must be positive and finite, got " + std::to_string(mu));
}

double CompositeProblem::smoothed_value_raw(const Matrix& x, double mu) const {
  validate_mu(mu);
  double total = smooth_->value(x);
  Eigen::VectorXd h;
  std::vector<double> terms;
  for (const auto& b : blocks_) {
    b->values(x, h);
    const double w = b->weight();
    terms.resize(static_cast<std::size_t>(h.size()));
    for (Eigen::Index t = 0; t < h.size(); ++t) {
      const double v = kernel_value(kernel_, h(t), mu);
      terms[static_cast<std::size_t>(t)] = w * std::pow(v, p_);
    }
    total += pairwise_sum(terms);
  }
  if (!std::isfinite(total)) throw NumericError("smoothed objective is non-finite");
  return total;
}

double CompositeProblem::smoothed_value(const Point& x, double mu) const {
  return smoothed_value_raw(x.values(), mu);
}

double CompositeProblem::true_value(const Point& x) const {
  double total = smooth_->value(x.values());
  Eigen::VectorXd h;
  std::vector<double> terms;
  for (const auto& b : blocks_) {
    b->values(x.values(), h);
    const double w = b->weight();
    terms.resize(static_cast<std::size_t>(h.size()));
    for (Eigen::Index t = 0; t < h.size(); ++t) {
      // 0^0 = 1 by convention; std::pow already follows it.
      terms[static_cast<std::size_t>(t)] = w * std::pow(kernel_target(kernel_, h(t)), p_);
    }
    total += pairwise_sum(terms);
  }
  if (!std::isfinite(total)) throw NumericError("true objective is non-finite");
  return total;
}

Matrix CompositeProblem::euclidean_gradient_raw(const Matrix& x, double mu) const {
  validate_mu(mu);
  Matrix g = smooth_->gradient(x);
  Eigen::VectorXd h, coeff;
  for (const auto& b : blocks_) {
    b->values(x, h);
    const double w = b->weight();
    coeff.resize(h.size());
    for (Eigen::Index t = 0; t < h.size(); ++t) {
      const double v = kernel_value(kernel_, h(t), mu);
      // d/dt [phi~^p] = p phi~^(p-1) phi~'; the p-1 power runs through
      // exp/log because v >= sigma mu stays strictly positive.
      const double powm1 = p_ == 1.0 ? 1.0 : std::exp((p_ - 1.0) * std::log(v));
      coeff(t) = w * p_ * powm1 * kernel_derivative(kernel_, h(t), mu);
    }
    b->accumulate_gradient(x, coeff, g);
  }
  if (!g.allFinite()) throw NumericError("euclidean gradient is non-finite");
  return g;
}

Matrix CompositeProblem::euclidean_gradient(const Point& x, double mu) const {
  return euclidean_gradient_raw(x.values(), mu);
}

Tangent CompositeProblem::riemannian_gradient(const Point& x, double mu) const {
  return manifold_.project_tangent(x, euclidean_gradient_raw(x.values(), mu));
}

bool CompositeProblem::has_constants() const {
  return smooth_->lipschitz().has_value() && smooth_->grad_bound().has_value();
}

TheoryConstants CompositeProblem::theory_constants(double mu) const {
  validate_mu(mu);
  if (!has_constants())
    throw UnavailableError("smooth part does not expose Lipschitz/gradient bounds");
  const KernelConstants kc = kernel_constants(kernel_);
  const double W = total_weight_;
  TheoryConstants out;
  out.W = W;
  out.L1 = p_ * W * std::pow(kc.sigma, p_ - 1.0) * kc.M_phi;
  out.L2 = p_ * W * std::pow(kc.sigma, p_ - 2.0) * max_grad_norm_ * max_grad_norm_ *
           (kc.sigma * kc.L_phi + (1.0 - p_) * kc.M_phi * kc.M_phi);
  out.L_mu = *smooth_->lipschitz() + out.L1 * grad_lipschitz_ * std::pow(mu, p_ - 1.0) +
             out.L2 * std::pow(mu, p_ - 2.0);
  out.M_mu = *smooth_->grad_bound() + out.L1 * max_grad_norm_ * std::pow(mu, p_ - 1.0);
  return out;
}

double CompositeProblem::value_gap_bound(double mu1, double mu2) const {
  validate_mu(mu1);
  validate_mu(mu2);
  if (mu2 > mu1) throw ParameterError("value_gap_bound requires mu2 <= mu1");
  const KernelConstants kc = kernel_constants(kernel_);
  return total_weight_ * kc.kappa * std::pow(kc.sigma, p_ - 1.0) *
         std::pow(mu1 / mu2, 1.0 - p_) * (std::pow(mu1, p_) - std::pow(mu2, p_));
}

double CompositeProblem::penalty_floor(double mu) const {
  validate_mu(mu);
  const KernelConstants kc = kernel_constants(kernel_);
  return total_weight_ * std::pow(kc.sigma * mu, p_);
}

Matrix fd_euclidean_gradient(const CompositeProblem& prob, const Point& x, double mu,
                             double step) {
  if (!(step > 0.0)) throw ParameterError("finite-difference step must be positive");
  Matrix g(x.rows(), x.cols());
  Matrix xp = x.values();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double orig = xp(i, j);
      xp(i, j) = orig + step;
      const double fp = prob.smoothed_value_raw(xp, mu);
      xp(i, j) = orig - step;
      const double fm = prob.smoothed_value_raw(xp, mu);
      xp(i, j) = orig;
      g(i, j) = (fp - fm) / (2.0 * step);
    }
  }
  return g;
}

double fd_directional_derivative(const CompositeProblem& prob, const Point& x,
                                 const Tangent& d, double mu, double step) {
  if (!(step > 0.0)) throw ParameterError("finite-difference step must be positive");
  const Manifold& man = prob.manifold();
  const Point xp = man.retract(x, d.scaled(step));
  const Point xm = man.retract(x, d.scaled(-step));
  return (prob.smoothed_value(xp, mu) - prob.smoothed_value(xm, mu)) / (2.0 * step);
}

}  // namespace asrga
