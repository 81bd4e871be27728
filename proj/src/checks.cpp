#include "asrga/checks.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstring>

#include "asrga/composite.hpp"
#include "asrga/errors.hpp"
#include "asrga/manifold.hpp"
#include "asrga/problems.hpp"
#include "asrga/rng.hpp"
#include "asrga/smoothing.hpp"
#include "asrga/solvers.hpp"
#include "asrga/synthetic.hpp"

namespace asrga {

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

namespace {

std::vector<double> grid_t() {
  std::vector<double> t;
  for (int i = 0; i < 100; ++i) t.push_back(-5.0 + 10.0 * i / 99.0);
  return t;
}

std::vector<double> grid_mu() {
  std::vector<double> mu;
  for (int i = 0; i < 100; ++i) mu.push_back(std::pow(10.0, -2.0 + 2.0 * i / 99.0));
  return mu;
}

void check_kernel(std::vector<CheckResult>& out, SmoothingKernel k) {
  const std::string tag = to_string(k) + ".";
  const KernelConstants c = kernel_constants(k);
  const auto ts = grid_t();
  const auto mus = grid_mu();

  {  // property (ii): value >= sigma * mu, slack 1e-14
    double worst = 1e300;
    for (double mu : mus)
      for (double t : ts) worst = std::min(worst, kernel_value(k, t, mu) - c.sigma * mu);
    out.push_back({tag + "lower_bound", worst >= -1e-14, worst + 1e-14,
                   "min(value - sigma*mu) = " + std::to_string(worst)});
  }
  {  // property (iv): |value(t,mu1) - value(t,mu2)| <= kappa |mu1 - mu2| + 1e-12
    double worst = -1e300;
    for (double t : ts)
      for (std::size_t a = 0; a < mus.size(); ++a)
        for (std::size_t b = a + 1; b < mus.size(); ++b) {
          const double lhs = std::abs(kernel_value(k, t, mus[a]) - kernel_value(k, t, mus[b]));
          worst = std::max(worst, lhs - c.kappa * std::abs(mus[a] - mus[b]));
        }
    out.push_back({tag + "mu_lipschitz", worst <= 1e-12, 1e-12 - worst,
                   "max excess = " + std::to_string(worst)});
  }
  {  // property (v): |derivative| <= M_phi + 1e-14
    double worst = -1e300;
    for (double mu : mus)
      for (double t : ts) worst = std::max(worst, std::abs(kernel_derivative(k, t, mu)) - c.M_phi);
    out.push_back({tag + "derivative_bound", worst <= 1e-14, 1e-14 - worst,
                   "max excess = " + std::to_string(worst)});
  }
  {  // property (vi): |d(t1) - d(t2)| <= (L_phi/mu)|t1 - t2| + 1e-12
    double worst = -1e300;
    for (double mu : mus)
      for (std::size_t a = 0; a < ts.size(); ++a)
        for (std::size_t b = a + 1; b < ts.size(); ++b) {
          const double lhs =
              std::abs(kernel_derivative(k, ts[a], mu) - kernel_derivative(k, ts[b], mu));
          worst = std::max(worst, lhs - (c.L_phi / mu) * std::abs(ts[a] - ts[b]));
        }
    out.push_back({tag + "derivative_lipschitz", worst <= 1e-12, 1e-12 - worst,
                   "max excess = " + std::to_string(worst)});
  }
  {  // finite-difference consistency away from branch points
    const double h = 1e-6;
    double worst = 0.0;
    for (double mu : mus)
      for (double t : ts) {
        if (std::abs(std::abs(t) - mu) <= 1e-3) continue;
        const double fd = (kernel_value(k, t + h, mu) - kernel_value(k, t - h, mu)) / (2.0 * h);
        const double d = kernel_derivative(k, t, mu);
        worst = std::max(worst, std::abs(fd - d) / std::max(1.0, std::abs(d)));
      }
    out.push_back({tag + "fd_consistency", worst <= 1e-6, 1e-6 - worst,
                   "max relative error = " + std::to_string(worst)});
  }
  {  // property (iii) along diagonal sequences delta = mu = 2^-j
    double final_err = 0.0;
    bool monotone_tail = true;
    for (double t0 : {-1.0, -0.1, 0.0, 0.3, 2.0}) {
      double prev = 1e300;
      for (int j = 1; j <= 20; ++j) {
        const double d = std::ldexp(1.0, -j);
        const double err = std::abs(kernel_value(k, t0 + d, d) - kernel_target(k, t0));
        if (j > 5 && err > prev + 1e-15) monotone_tail = false;
        prev = err;
        if (j == 20) final_err = std::max(final_err, err);
      }
    }
    out.push_back({tag + "pointwise_limit", final_err <= 1e-4 && monotone_tail, 1e-4 - final_err,
                   "error at j=20: " + std::to_string(final_err) +
                       (monotone_tail ? "" : " (tail not monotone)")});
  }
  {  // constants sane
    const bool ok = c.sigma > 0 && c.kappa > 0 && c.M_phi > 0 && c.L_phi > 0 &&
                    std::isfinite(c.sigma + c.kappa + c.M_phi + c.L_phi);
    out.push_back({tag + "constants_positive", ok, 0.0, ""});
  }
}

}  // namespace

std::vector<CheckResult> check_smoothing() {
  std::vector<CheckResult> out;
  check_kernel(out, SmoothingKernel::Abs);
  check_kernel(out, SmoothingKernel::Plus);
  return out;
}

namespace {

// Projection onto the tangent space assembled from an explicit orthonormal
// basis (skew directions X*(E_ij - E_ji)/sqrt(2) plus the X-orthogonal
// complement), an independent oracle for the closed-form projector.
Matrix basis_projection(const Matrix& x, const Matrix& d) {
  const Eigen::Index n = x.rows(), s = x.cols();
  Matrix proj = Matrix::Zero(n, s);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = i + 1; j < s; ++j) {
      Matrix b = Matrix::Zero(n, s);
      b.col(j) = x.col(i) * inv_sqrt2;
      b.col(i) = -x.col(j) * inv_sqrt2;
      proj += (d.array() * b.array()).sum() * b;
    }
  Eigen::HouseholderQR<Matrix> qr(x);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  for (Eigen::Index c = s; c < n; ++c)
    for (Eigen::Index j = 0; j < s; ++j) {
      Matrix b = Matrix::Zero(n, s);
      b.col(j) = q.col(c);
      proj += (d.array() * b.array()).sum() * b;
    }
  return proj;
}

void check_one_manifold(std::vector<CheckResult>& out, const ManifoldSpec& spec,
                        std::uint64_t seed_base) {
  const Manifold man(spec);
  const std::string tag = to_string(spec.kind) + ".";
  Rng rng(seed_base);

  double worst_tangency = 0.0, worst_contraction = -1e300, worst_idem = 0.0, worst_feas = 0.0,
         worst_taylor = 0.0, worst_oracle = 0.0;
  bool zero_identity = true;

  for (int trial = 0; trial < 20; ++trial) {
    const Point x = man.random_point(seed_base + 1000 + trial);
    const Matrix d = rng.gaussian_matrix(spec.rows, spec.cols);
    const Tangent t = man.project_tangent(x, d);

    const Matrix sym = x.values().transpose() * t.values() + t.values().transpose() * x.values();
    worst_tangency = std::max(worst_tangency, sym.norm() / std::max(d.norm(), 1e-300));
    worst_contraction = std::max(worst_contraction, t.norm() - d.norm());
    worst_idem = std::max(
        worst_idem, (man.project_tangent(x, t.values()).values() - t.values()).norm() /
                        std::max(1.0, t.norm()));
    worst_oracle =
        std::max(worst_oracle, (basis_projection(x.values(), d) - t.values()).norm() /
                                   std::max(1.0, t.norm()));

    // Retraction feasibility for ||D|| <= 1.
    const double tn = t.norm();
    if (tn > 0) {
      const Tangent unit = t.scaled(1.0 / std::max(tn, 1.0));
      const Point y = man.retract(x, unit);
      worst_feas = std::max(worst_feas, Manifold::orthonormality_residual(y.values()));

      // First-order Taylor property: ||R_X(tD) - X - tD|| = O(t^2).
      const Tangent dir = t.scaled(1.0 / tn);
      for (double tt : {1e-2, 1e-3, 1e-4}) {
        const Point z = man.retract(x, dir.scaled(tt));
        const double resid =
            (z.values() - x.values() - tt * dir.values()).norm() / (tt * tt);
        worst_taylor = std::max(worst_taylor, resid);
      }
    }

    const Tangent zero = man.make_tangent(x, Matrix::Zero(spec.rows, spec.cols));
    const Point back = man.retract(x, zero);
    if (std::memcmp(back.values().data(), x.values().data(),
                    sizeof(double) * static_cast<std::size_t>(x.values().size())) != 0)
      zero_identity = false;
  }

  out.push_back({tag + "tangency", worst_tangency <= 1e-10, 1e-10 - worst_tangency,
                 "max ||X'T + T'X|| / ||D|| = " + std::to_string(worst_tangency)});
  out.push_back({tag + "contraction", worst_contraction <= 1e-12, 1e-12 - worst_contraction,
                 "max ||proj(D)|| - ||D|| = " + std::to_string(worst_contraction)});
  out.push_back({tag + "idempotent", worst_idem <= 1e-12, 1e-12 - worst_idem, ""});
  out.push_back({tag + "projection_oracle", worst_oracle <= 1e-10, 1e-10 - worst_oracle,
                 "max deviation from basis-assembled projection = " + std::to_string(worst_oracle)});
  out.push_back({tag + "retraction_feasibility", worst_feas <= 1e-10, 1e-10 - worst_feas,
                 "max ||R'R - I|| = " + std::to_string(worst_feas)});
  out.push_back({tag + "zero_identity_bitwise", zero_identity, 0.0, ""});
  out.push_back({tag + "taylor_first_order", worst_taylor <= 5.0, 5.0 - worst_taylor,
                 "max ||R(tD) - X - tD|| / t^2 = " + std::to_string(worst_taylor)});
}

}  // namespace

std::vector<CheckResult> check_manifolds() {
  std::vector<CheckResult> out;
  check_one_manifold(out, ManifoldSpec::sphere(5), 101);
  check_one_manifold(out, ManifoldSpec::stiefel(6, 3), 202);
  check_one_manifold(out, ManifoldSpec::orthogonal_group(4), 303);

  {  // frozen value: Stiefel projection at the identity
    const Manifold man(ManifoldSpec::stiefel(2, 2));
    const Point x = man.make_point(Matrix::Identity(2, 2));
    Matrix d(2, 2);
    d << 0, 1, 0, 0;
    Matrix expect(2, 2);
    expect << 0, 0.5, -0.5, 0;
    const double err = (man.project_tangent(x, d).values() - expect).norm();
    out.push_back({"stiefel.frozen_projection", err <= 1e-15, 1e-15 - err, ""});
  }
  {  // frozen value: sphere retraction along e2
    const Manifold man(ManifoldSpec::sphere(3));
    Matrix xv = Matrix::Zero(3, 1);
    xv(0, 0) = 1.0;
    const Point x = man.make_point(xv);
    Matrix dv = Matrix::Zero(3, 1);
    dv(1, 0) = 1.0;
    const Point y = man.retract(x, man.make_tangent(x, dv));
    Matrix expect = Matrix::Zero(3, 1);
    expect(0, 0) = expect(1, 0) = 1.0 / std::sqrt(2.0);
    const double err = (y.values() - expect).norm();
    out.push_back({"sphere.frozen_retraction", err <= 1e-15, 1e-15 - err, ""});
  }
  {  // random_point determinism and feasibility
    const Manifold man(ManifoldSpec::stiefel(7, 3));
    const Point a = man.random_point(42), b = man.random_point(42);
    const bool same = (a.values() - b.values()).norm() == 0.0;
    double worst = 0.0;
    for (std::uint64_t s = 1; s <= 50; ++s)
      worst = std::max(worst,
                       Manifold::orthonormality_residual(man.random_point(s).values()));
    out.push_back({"random_point.deterministic", same, 0.0, ""});
    out.push_back({"random_point.feasible", worst <= 1e-12, 1e-12 - worst,
                   "max residual = " + std::to_string(worst)});
  }
  {  // Monte Carlo coordinate means on the sphere, 3-sigma binomial-style bound
    const Manifold man(ManifoldSpec::sphere(5));
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(5);
    for (std::uint64_t s = 1; s <= 100; ++s) mean += man.random_point(s).values().col(0);
    mean /= 100.0;
    const double bound = 3.0 / (std::sqrt(100.0) * std::sqrt(5.0));
    const double worst = mean.cwiseAbs().maxCoeff();
    out.push_back({"random_point.coordinate_means", worst <= bound, bound - worst,
                   "max |mean| = " + std::to_string(worst) + ", bound = " + std::to_string(bound)});
  }
  {  // deterministic QR fallback on a rank-deficient polar input
    Matrix y(3, 2);
    y << 1, 0, 0, 0, 0, 0;  // second column zero: polar factor not unique
    bool used_a = false, used_b = false;
    const Matrix qa = Manifold::polar_or_qr(y, &used_a);
    const Matrix qb = Manifold::polar_or_qr(y, &used_b);
    const bool ok = used_a && used_b && (qa - qb).norm() == 0.0 &&
                    Manifold::orthonormality_residual(qa) <= 1e-12;
    out.push_back({"retraction.qr_fallback", ok, 0.0,
                   used_a ? "fallback taken, deterministic" : "fallback not triggered"});
  }
  return out;
}

std::vector<CheckResult> check_gradients(bool corrupt_gradient) {
  std::vector<CheckResult> out;
  struct KindSetup {
    ProblemKind kind;
    InstanceDims dims;
    InstanceHyperparams hyper;
  };
  const std::vector<KindSetup> setups = {
      {ProblemKind::Spca, {10, 2, 20}, {1.0, 0.5, 0.0}},
      {ProblemKind::Dpcp, {5, 1, 60}, {0.5, 0.5, 0.0}},
      {ProblemKind::Sdl, {6, 6, 80}, {0.5, 0.5, 0.0}},
      {ProblemKind::NonnegOrth, {8, 3, 16}, {0.5, 0.5, 0.0}},
  };
  for (std::size_t idx = 0; idx < setups.size(); ++idx) {
    const auto& su = setups[idx];
    const ProblemInstance inst = make_instance(su.kind, su.dims, su.hyper, 1234 + idx);
    const CompositeProblem prob = build_problem(inst);
    const Manifold& man = prob.manifold();
    Rng rng(777 + idx);
    double worst_rel = 0.0, worst_tan = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const Point x = man.random_point(9000 + 31 * idx + trial);
      const double mu = std::pow(10.0, rng.uniform(-2.0, 0.0));
      Matrix g = prob.euclidean_gradient(x, mu);
      if (corrupt_gradient && idx == 0) g(0, 0) += 1e-3;
      const Matrix fd = fd_euclidean_gradient(prob, x, mu, 1e-7);
      worst_rel = std::max(worst_rel, (fd - g).norm() / std::max(g.norm(), 1e-12));
      const Tangent rg = prob.riemannian_gradient(x, mu);
      const Matrix sym =
          x.values().transpose() * rg.values() + rg.values().transpose() * x.values();
      worst_tan = std::max(worst_tan, sym.norm() / std::max(rg.norm(), 1e-300));
    }
    const std::string tag = to_string(su.kind);
    out.push_back({tag + ".fd_agreement", worst_rel <= 1e-5, 1e-5 - worst_rel,
                   "max relative error = " + std::to_string(worst_rel)});
    out.push_back({tag + ".riemannian_tangency", worst_tan <= 1e-10, 1e-10 - worst_tan, ""});
  }
  return out;
}

std::vector<CheckResult> check_rate(const std::optional<std::vector<TraceRow>>& rows, double p) {
  std::vector<CheckResult> out;
  const auto describe = [](const RateStats& st) {
    return "ratio = " + std::to_string(st.ratio) + " (first max " + std::to_string(st.first_max) +
           " over [" + std::to_string(st.k_min) + "," + std::to_string(st.k_mid) +
           "], tail max " + std::to_string(st.tail_max) + " over (" + std::to_string(st.k_mid) +
           "," + std::to_string(st.k_max) + "])";
  };

  {  // decaying trace must stay unflagged
    if (rows) {
      const RateStats st = rate_statistic(*rows, p);
      out.push_back({"rate.supplied_trace", !st.flagged, RateStats::kRateThreshold - st.ratio,
                     describe(st)});
    } else {
      SyntheticSpec spec;
      spec.kind = SyntheticKind::SdlBernoulliGaussian;
      spec.n = 10;
      spec.p = 0.5;
      spec.seed = 12345;
      const ProblemInstance inst = generate(spec);
      const CompositeProblem prob = build_problem(inst);
      AsrgaConfig cfg;
      cfg.max_iters = 1000;
      cfg.trace_stride = 1;
      const SolveResult res = run_asrga(prob, cfg, 98765);
      const RateStats st = rate_statistic(res.trace, prob.p());
      out.push_back({"rate.sdl_run", !st.flagged, RateStats::kRateThreshold - st.ratio,
                     describe(st)});
    }
  }
  {  // negative control: constant gradient, s_k ~ k^(1/(4-p)), must be flagged
    std::vector<TraceRow> fake(10000);
    for (long k = 1; k <= 10000; ++k) {
      fake[static_cast<std::size_t>(k - 1)].k = k;
      fake[static_cast<std::size_t>(k - 1)].grad_norm = 1.0;
    }
    const RateStats st = rate_statistic(fake, p);
    out.push_back({"rate.negative_control_flagged", st.flagged,
                   st.ratio - RateStats::kRateThreshold, describe(st)});
  }
  {  // positive control: grad ~ k^(-1/(4-p)) gives a constant statistic
    std::vector<TraceRow> fake(10000);
    for (long k = 1; k <= 10000; ++k) {
      fake[static_cast<std::size_t>(k - 1)].k = k;
      fake[static_cast<std::size_t>(k - 1)].grad_norm =
          std::pow(static_cast<double>(k), -1.0 / (4.0 - p));
    }
    const RateStats st = rate_statistic(fake, p);
    out.push_back({"rate.positive_control", !st.flagged && st.ratio <= 1.01,
                   1.01 - st.ratio, describe(st)});
  }
  return out;
}

}  // namespace asrga
