#include "asrga/synthetic.hpp"

#include <cmath>

#include "asrga/errors.hpp"
#include "asrga/rng.hpp"

namespace asrga {

std::string to_string(SyntheticKind k) {
  switch (k) {
    case SyntheticKind::SdlBernoulliGaussian: return "sdl_bernoulli_gaussian";
    case SyntheticKind::DpcpInlierOutlier: return "dpcp_inlier_outlier";
    case SyntheticKind::SpcaGaussian: return "spca_gaussian";
  }
  return "?";
}

SyntheticKind synthetic_kind_from_string(const std::string& name) {
  if (name == "sdl_bernoulli_gaussian" || name == "sdl") return SyntheticKind::SdlBernoulliGaussian;
  if (name == "dpcp_inlier_outlier" || name == "dpcp") return SyntheticKind::DpcpInlierOutlier;
  if (name == "spca_gaussian" || name == "spca") return SyntheticKind::SpcaGaussian;
  throw ParameterError("unknown synthetic kind '" + name + "'");
}

void SyntheticSpec::validate() const {
  if (n < 2) throw ParameterError("synthetic spec requires n >= 2");
  if (s < 1 || s > n) throw ParameterError("synthetic spec requires 1 <= s <= n");
  if (m < 0) throw ParameterError("sample count must be >= 0");
  if (!(theta > 0.0) || theta >= 1.0) throw ParameterError("theta must lie in (0, 1)");
  if (noise < 0.0) throw ParameterError("noise level must be >= 0");
  if (kind == SyntheticKind::DpcpInlierOutlier) {
    if (inliers < 1) throw ParameterError("DPCP spec requires inliers >= 1");
    if (outliers < 0) throw ParameterError("DPCP spec requires outliers >= 0");
  }
  if (!(p > 0.0) || p > 1.0) throw ParameterError("exponent p must lie in (0, 1]");
  if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
}

namespace {

Eigen::VectorXd unit_gaussian(Rng& rng, Eigen::Index n) {
  Eigen::VectorXd v = rng.gaussian_matrix(n, 1);
  double nrm = v.norm();
  while (nrm <= 1e-12) {
    v = rng.gaussian_matrix(n, 1);
    nrm = v.norm();
  }
  return v / nrm;
}

ProblemInstance generate_sdl(const SyntheticSpec& spec) {
  Rng rng(spec.seed);
  const Eigen::Index m =
      spec.m > 0 ? spec.m
                 : static_cast<Eigen::Index>(std::floor(10.0 * std::pow(double(spec.n), 1.5)));
  const Matrix x_star = Manifold::polar_factor(rng.gaussian_matrix(spec.n, spec.n));
  Matrix s = Matrix::Zero(spec.n, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < spec.n; ++i)
      if (rng.bernoulli(spec.theta)) s(i, j) = rng.gaussian();
  ProblemInstance inst = make_sdl(x_star * s, spec.p);
  inst.ground_truth = x_star;
  return inst;
}

ProblemInstance generate_dpcp(const SyntheticSpec& spec) {
  Rng rng(spec.seed);
  const Eigen::Index n = spec.n;
  const Eigen::VectorXd b = unit_gaussian(rng, n);
  Matrix e(spec.inliers + spec.outliers, n);
  for (Eigen::Index i = 0; i < spec.inliers; ++i) {
    // Unit vector in the hyperplane b-perp, then additive Gaussian noise.
    Eigen::VectorXd u = rng.gaussian_matrix(n, 1);
    u -= b * b.dot(u);
    double nrm = u.norm();
    while (nrm <= 1e-12) {
      u = rng.gaussian_matrix(n, 1);
      u -= b * b.dot(u);
      nrm = u.norm();
    }
    u /= nrm;
    if (spec.noise > 0.0) {
      u += spec.noise * rng.gaussian_matrix(n, 1);
      u.normalize();
    }
    e.row(i) = u.transpose();
  }
  for (Eigen::Index i = 0; i < spec.outliers; ++i)
    e.row(spec.inliers + i) = unit_gaussian(rng, n).transpose();
  ProblemInstance inst = make_dpcp(std::move(e), spec.p);
  inst.ground_truth = b;
  return inst;
}

ProblemInstance generate_spca(const SyntheticSpec& spec) {
  Rng rng(spec.seed);
  const Eigen::Index m = spec.m > 0 ? spec.m : 4 * spec.n;
  Matrix a = rng.gaussian_matrix(spec.n, m);
  // Columns are samples: subtract the sample mean, then normalize each
  // feature row.
  const Eigen::VectorXd mean = a.rowwise().mean();
  a.colwise() -= mean;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double nrm = a.row(i).norm();
    if (nrm > 1e-12) a.row(i) /= nrm;
  }
  return make_spca(std::move(a), spec.s, spec.lambda, spec.p);
}

}  // namespace

ProblemInstance generate(const SyntheticSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case SyntheticKind::SdlBernoulliGaussian: return generate_sdl(spec);
    case SyntheticKind::DpcpInlierOutlier: return generate_dpcp(spec);
    case SyntheticKind::SpcaGaussian: return generate_spca(spec);
  }
  throw ParameterError("unknown synthetic kind");
}

}  // namespace asrga
