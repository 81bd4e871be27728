#include "asrga/problems.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "asrga/errors.hpp"
#include "asrga/rng.hpp"

namespace asrga {

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::Spca: return "spca";
    case ProblemKind::Dpcp: return "dpcp";
    case ProblemKind::Sdl: return "sdl";
    case ProblemKind::NonnegOrth: return "nonneg_orth";
  }
  return "?";
}

ProblemKind problem_kind_from_string(const std::string& name) {
  if (name == "spca") return ProblemKind::Spca;
  if (name == "dpcp") return ProblemKind::Dpcp;
  if (name == "sdl") return ProblemKind::Sdl;
  if (name == "nonneg_orth") return ProblemKind::NonnegOrth;
  throw ParameterError("unknown problem kind '" + name +
                       "' (expected spca, dpcp, sdl, or nonneg_orth)");
}

namespace {

void require_p(double p) {
  if (!(p > 0.0) || p > 1.0)
    throw ParameterError("exponent p must lie in (0, 1], got " + std::to_string(p));
}

}  // namespace

ProblemInstance make_spca(Matrix a, Eigen::Index s, double lambda, double p) {
  require_p(p);
  if (a.rows() < 2 || a.cols() < 1) throw DimensionError("SPCA data matrix too small");
  if (s < 1 || s > a.rows())
    throw DimensionError("SPCA requires 1 <= s <= n, got s = " + std::to_string(s));
  if (!(lambda > 0.0)) throw ParameterError("SPCA lambda must be positive");
  ProblemInstance inst;
  inst.kind = ProblemKind::Spca;
  inst.manifold = s == 1 ? ManifoldSpec::sphere(a.rows()) : ManifoldSpec::stiefel(a.rows(), s);
  inst.p = p;
  inst.data = std::move(a);
  inst.weight = lambda;
  return inst;
}

ProblemInstance make_dpcp(Matrix e, double p) {
  require_p(p);
  if (e.cols() < 2 || e.rows() < 1) throw DimensionError("DPCP data matrix too small");
  ProblemInstance inst;
  inst.kind = ProblemKind::Dpcp;
  inst.manifold = ManifoldSpec::sphere(e.cols());
  inst.p = p;
  inst.data = std::move(e);
  inst.weight = 1.0;
  return inst;
}

ProblemInstance make_sdl(Matrix y, double p) {
  require_p(p);
  if (y.rows() < 2 || y.cols() < 1) throw DimensionError("SDL data matrix too small");
  ProblemInstance inst;
  inst.kind = ProblemKind::Sdl;
  inst.manifold = ManifoldSpec::orthogonal_group(y.rows());
  inst.p = p;
  inst.data = std::move(y);
  inst.weight = 1.0;  // per-term weight 1/m is derived from data in build_problem
  return inst;
}

double nonneg_orth_alpha_threshold(const Matrix& a, Eigen::Index s) {
  const Matrix m = a * a.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  const double q = eig.eigenvalues().maxCoeff() * std::sqrt(static_cast<double>(s));
  return 5.0 * q * std::pow(static_cast<double>(s), 0.75);
}

ProblemInstance make_nonneg_orth(Matrix a, Eigen::Index s, double alpha, double p) {
  require_p(p);
  if (a.rows() < 2 || a.cols() < 1) throw DimensionError("data matrix too small");
  if (s < 1 || s > a.rows())
    throw DimensionError("nonneg_orth requires 1 <= s <= n, got s = " + std::to_string(s));
  if (!(alpha > 0.0)) throw ParameterError("nonneg_orth alpha must be positive");
  const double threshold = nonneg_orth_alpha_threshold(a, s);
  ProblemInstance inst;
  inst.kind = ProblemKind::NonnegOrth;
  inst.manifold = s == 1 ? ManifoldSpec::sphere(a.rows()) : ManifoldSpec::stiefel(a.rows(), s);
  inst.p = p;
  inst.data = std::move(a);
  inst.weight = alpha;
  inst.notes.push_back("exact-penalty threshold: alpha > " + std::to_string(threshold) +
                       " required for equivalence with the constrained problem (alpha = " +
                       std::to_string(alpha) + (alpha > threshold ? ", satisfied)" : ", NOT satisfied)"));
  if (p > 0.5)
    inst.notes.push_back("exact-penalty equivalence is established for p in (0, 1/2]; p = " +
                         std::to_string(p) + " is outside that range");
  return inst;
}

CompositeProblem build_problem(const ProblemInstance& inst) {
  require_p(inst.p);
  const Eigen::Index n = inst.manifold.rows;
  const Eigen::Index s = inst.manifold.cols;
  std::shared_ptr<const SmoothPart> smooth;
  std::vector<std::shared_ptr<const PenaltyBlock>> blocks;
  SmoothingKernel kernel = SmoothingKernel::Abs;

  switch (inst.kind) {
    case ProblemKind::Spca: {
      if (inst.data.rows() != n) throw DimensionError("SPCA data row count must equal n");
      smooth = std::make_shared<NegativeQuadraticPart>(inst.data * inst.data.transpose(), 1.0, s);
      blocks.push_back(
          std::make_shared<EntryLinearPenalty>(Matrix::Identity(n, n), s, inst.weight));
      break;
    }
    case ProblemKind::Dpcp: {
      if (inst.data.cols() != n) throw DimensionError("DPCP data column count must equal n");
      smooth = std::make_shared<ZeroSmoothPart>(n, 1);
      blocks.push_back(std::make_shared<EntryLinearPenalty>(inst.data.transpose(), 1, 1.0));
      break;
    }
    case ProblemKind::Sdl: {
      if (inst.data.rows() != n) throw DimensionError("SDL data row count must equal n");
      smooth = std::make_shared<ZeroSmoothPart>(n, n);
      const double w = 1.0 / static_cast<double>(inst.data.cols());
      blocks.push_back(std::make_shared<EntryLinearPenalty>(inst.data, n, w));
      break;
    }
    case ProblemKind::NonnegOrth: {
      if (inst.data.rows() != n) throw DimensionError("data row count must equal n");
      smooth = std::make_shared<NegativeQuadraticPart>(inst.data * inst.data.transpose(), 1.0, s);
      blocks.push_back(
          std::make_shared<EntryLinearPenalty>(-Matrix::Identity(n, n), s, inst.weight));
      kernel = SmoothingKernel::Plus;
      break;
    }
  }
  return CompositeProblem(inst.manifold, inst.p, kernel, std::move(smooth), std::move(blocks));
}

ProblemInstance make_instance(ProblemKind kind, const InstanceDims& dims,
                              const InstanceHyperparams& hyper, std::uint64_t seed) {
  if (dims.n < 2) throw DimensionError("instance requires n >= 2");
  Rng rng(seed);
  switch (kind) {
    case ProblemKind::Spca: {
      const Eigen::Index m = dims.m > 0 ? dims.m : 2 * dims.n;
      return make_spca(rng.gaussian_matrix(dims.n, m), dims.s, hyper.lambda, hyper.p);
    }
    case ProblemKind::Dpcp: {
      const Eigen::Index m = dims.m > 0 ? dims.m : 20 * dims.n;
      Matrix e = rng.gaussian_matrix(m, dims.n);
      for (Eigen::Index i = 0; i < e.rows(); ++i) e.row(i).normalize();
      return make_dpcp(std::move(e), hyper.p);
    }
    case ProblemKind::Sdl: {
      const Eigen::Index m =
          dims.m > 0 ? dims.m
                     : static_cast<Eigen::Index>(10.0 * std::pow(static_cast<double>(dims.n), 1.5));
      return make_sdl(rng.gaussian_matrix(dims.n, m), hyper.p);
    }
    case ProblemKind::NonnegOrth: {
      const Eigen::Index m = dims.m > 0 ? dims.m : 2 * dims.n;
      Matrix a = rng.gaussian_matrix(dims.n, m);
      double alpha = hyper.alpha;
      if (alpha <= 0.0) alpha = 1.25 * nonneg_orth_alpha_threshold(a, dims.s);
      return make_nonneg_orth(std::move(a), dims.s, alpha, hyper.p);
    }
  }
  throw ParameterError("unknown problem kind");
}

}  // namespace asrga
