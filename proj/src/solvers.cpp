#include "asrga/solvers.hpp"

#include <chrono>
#include <cmath>

#include "asrga/errors.hpp"

namespace asrga {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate_common(double mu0, double mu_floor, long max_iters, double max_seconds,
                     const std::optional<double>& epsilon,
                     const std::optional<double>& metric_target, long stride) {
  if (!(mu0 > 0.0) || mu0 > 1.0) throw ParameterError("mu0 must lie in (0, 1]");
  if (!(mu_floor > 0.0)) throw ParameterError("mu_floor must be positive");
  if (max_iters < 0) throw ParameterError("max_iters must be >= 0");
  if (max_seconds < 0.0 || !std::isfinite(max_seconds))
    throw ParameterError("max_seconds must be >= 0 and finite");
  if (epsilon && !(*epsilon > 0.0)) throw ParameterError("epsilon must be positive when set");
  if (metric_target && !(*metric_target >= 0.0))
    throw ParameterError("metric_target must be >= 0 when set");
  if (stride < 1) throw ParameterError("trace_stride must be >= 1");
  if (max_iters == 0 && max_seconds == 0.0 && !epsilon)
    throw ParameterError("at least one of max_iters, max_seconds, epsilon must be set");
}

}  // namespace

void AsrgaConfig::validate() const {
  if (!(eta0 > 0.0) || !std::isfinite(eta0)) throw ParameterError("eta0 must be positive and finite");
  validate_common(mu0, mu_floor, max_iters, max_seconds, epsilon, metric_target, trace_stride);
}

void RssdConfig::validate() const {
  if (!(armijo_c1 > 0.0) || armijo_c1 >= 1.0) throw ParameterError("armijo_c1 must lie in (0, 1)");
  if (!(backtrack > 0.0) || backtrack >= 1.0) throw ParameterError("backtrack must lie in (0, 1)");
  if (!(mu_shrink > 0.0) || mu_shrink >= 1.0) throw ParameterError("mu_shrink must lie in (0, 1)");
  if (!(grad_trigger > 0.0)) throw ParameterError("grad_trigger must be positive");
  if (max_backtracks < 1) throw ParameterError("max_backtracks must be >= 1");
  validate_common(mu0, mu_floor, max_iters, max_seconds, epsilon, metric_target, trace_stride);
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::EpsilonStationary: return "epsilon_stationary";
    case StopReason::IterBudget: return "iter_budget";
    case StopReason::TimeBudget: return "time_budget";
    case StopReason::MetricTarget: return "metric_target";
    case StopReason::MuFloor: return "mu_floor";
    case StopReason::NumericFailure: return "numeric_failure";
  }
  return "?";
}

double mu_schedule(long k, double p, double mu_floor) {
  if (k < 1) throw ParameterError("mu schedule requires k >= 1");
  return std::max(std::pow(static_cast<double>(k), -1.0 / (4.0 - p)), mu_floor);
}

void SlidingWindowBest::push(long j, double grad_norm, double mu, const Matrix& point) {
  if (!candidates_.empty() && j <= candidates_.back().e.j)
    throw ParameterError("window indices must be strictly increasing");
  const Entry e{j, grad_norm, mu};
  if (keep_records_) records_.push_back(e);
  // Strictly-greater pops keep the earliest entry among equal norms in front,
  // preserving the smallest-j tie-break of the argmin.
  while (!candidates_.empty() && candidates_.back().e.grad_norm > grad_norm)
    candidates_.pop_back();
  candidates_.push_back(Candidate{e, point});
  window_begin_ = j / 2;
  while (candidates_.front().e.j < window_begin_) candidates_.pop_front();
  if (keep_records_)
    while (!records_.empty() && records_.front().j < window_begin_) records_.pop_front();
}

const SlidingWindowBest::Entry& SlidingWindowBest::best() const {
  if (candidates_.empty()) throw UnavailableError("window is empty");
  return candidates_.front().e;
}

const Matrix& SlidingWindowBest::best_point() const {
  if (candidates_.empty()) throw UnavailableError("window is empty");
  return candidates_.front().point;
}

SlidingWindowBest::Entry SlidingWindowBest::brute_force_best() const {
  if (!keep_records_) throw UnavailableError("scalar records were not retained");
  if (records_.empty()) throw UnavailableError("window is empty");
  Entry best = records_.front();
  for (const Entry& e : records_)
    if (e.grad_norm < best.grad_norm) best = e;
  return best;
}

namespace {

// Shared driver for ASRGA and the naive AdaGrad variant; they differ only in
// the eta accumulation and the stepsize numerator.
SolveResult run_adagrad_family(const CompositeProblem& prob, const AsrgaConfig& cfg,
                               std::uint64_t seed, std::optional<Matrix> x0, MetricFn metric,
                               bool mu_scaled, const char* name) {
  cfg.validate();
  const Manifold& man = prob.manifold();
  const double p = prob.p();

  SolveResult res;
  res.solver = name;
  Point x = x0 ? man.make_point(std::move(*x0)) : man.random_point(seed);
  double eta_sq = cfg.eta0 * cfg.eta0;
  double eta = cfg.eta0;
  double mu_k = cfg.mu0;
  SlidingWindowBest window;
  const bool timed = cfg.max_seconds > 0.0;
  const auto t0 = Clock::now();

  for (long k = 1;; ++k) {
    if (cfg.max_iters > 0 && k > cfg.max_iters) {
      res.stop = StopReason::IterBudget;
      break;
    }
    if (timed && seconds_since(t0) >= cfg.max_seconds) {
      res.stop = StopReason::TimeBudget;
      break;
    }
    mu_k = mu_schedule(k, p, cfg.mu_floor);
    double gn = 0.0;
    std::optional<Tangent> g;
    try {
      g.emplace(prob.riemannian_gradient(x, mu_k));
      gn = g->norm();
      if (!std::isfinite(gn)) throw NumericError("gradient norm is non-finite");
    } catch (const NumericError& err) {
      res.stop = StopReason::NumericFailure;
      res.message = std::string(err.what()) + " (iteration " + std::to_string(k) + ")";
      break;
    }
    const double scale = mu_scaled ? std::pow(mu_k, 2.0 - p) : 1.0;
    eta_sq += scale * gn * gn;
    eta = std::sqrt(eta_sq);
    const double step = scale / eta;
    window.push(k, gn, mu_k, x.values());

    std::optional<double> mval;
    const bool trace_due = (k - 1) % cfg.trace_stride == 0;
    if (metric && (cfg.metric_target.has_value() || trace_due)) mval = metric(x.values());
    if (trace_due) {
      TraceRow row;
      row.k = k;
      row.mu = mu_k;
      row.eta = eta;
      row.step = step;
      row.grad_norm = gn;
      row.f_smooth = prob.smoothed_value(x, mu_k);
      row.f_true = prob.true_value(x);
      row.metric = mval;
      row.elapsed_s = timed ? seconds_since(t0) : 0.0;
      res.trace.push_back(row);
    }

    // Checked before the step so the final iterate is the one that met the
    // target.
    if (cfg.metric_target && mval && *mval <= *cfg.metric_target) {
      res.iterations = k;
      res.stop = StopReason::MetricTarget;
      break;
    }

    if (gn > 0.0) {
      x = man.retract(x, g->scaled(-step));
      ++res.retractions;
    }
    res.iterations = k;

    if (cfg.epsilon) {
      const auto& b = window.best();
      if (b.grad_norm <= *cfg.epsilon && b.mu <= *cfg.epsilon) {
        res.stop = StopReason::EpsilonStationary;
        break;
      }
    }
  }

  res.wall_seconds = seconds_since(t0);
  res.eta_last = eta;
  res.mu_last = mu_k;
  res.last = x.values();
  if (!window.empty()) {
    const auto& b = window.best();
    res.best = BestRecord{b.j, b.grad_norm, b.mu, window.best_point()};
    const Point bp = man.make_point(res.best->point);
    res.f_true_best = prob.true_value(bp);
    if (metric) res.metric_best = metric(res.best->point);
  }
  return res;
}

}  // namespace

SolveResult run_asrga(const CompositeProblem& prob, const AsrgaConfig& cfg, std::uint64_t seed,
                      std::optional<Matrix> x0, MetricFn metric) {
  return run_adagrad_family(prob, cfg, seed, std::move(x0), std::move(metric), true, "asrga");
}

SolveResult run_naive_adagrad(const CompositeProblem& prob, const AsrgaConfig& cfg,
                              std::uint64_t seed, std::optional<Matrix> x0, MetricFn metric) {
  return run_adagrad_family(prob, cfg, seed, std::move(x0), std::move(metric), false,
                            "naive_adagrad");
}

SolveResult run_rssd(const CompositeProblem& prob, const RssdConfig& cfg, std::uint64_t seed,
                     std::optional<Matrix> x0, MetricFn metric) {
  cfg.validate();
  const Manifold& man = prob.manifold();

  SolveResult res;
  res.solver = "rssd";
  Point x = x0 ? man.make_point(std::move(*x0)) : man.random_point(seed);
  double mu = cfg.mu0;
  SlidingWindowBest window;
  const bool has_constants = prob.has_constants();
  const bool timed = cfg.max_seconds > 0.0;
  const auto t0 = Clock::now();

  for (long k = 1;; ++k) {
    if (cfg.max_iters > 0 && k > cfg.max_iters) {
      res.stop = StopReason::IterBudget;
      break;
    }
    if (timed && seconds_since(t0) >= cfg.max_seconds) {
      res.stop = StopReason::TimeBudget;
      break;
    }
    try {
      Tangent g = prob.riemannian_gradient(x, mu);
      double gn = g.norm();
      bool floored = false;
      while (gn <= cfg.grad_trigger * mu) {
        mu *= cfg.mu_shrink;
        if (mu < cfg.mu_floor) {
          floored = true;
          break;
        }
        g = prob.riemannian_gradient(x, mu);
        gn = g.norm();
      }
      if (floored) {
        res.stop = StopReason::MuFloor;
        break;
      }

      const double f0 = prob.smoothed_value(x, mu);
      double gamma = has_constants ? 1.0 / prob.theory_constants(mu).L_mu : 1.0;
      bool accepted = false;
      std::optional<Point> next;
      for (int b = 0; b <= cfg.max_backtracks; ++b) {
        Point trial = man.retract(x, g.scaled(-gamma));
        ++res.retractions;
        const double ft = prob.smoothed_value(trial, mu);
        if (ft <= f0 - cfg.armijo_c1 * gamma * gn * gn) {
          accepted = true;
          next.emplace(std::move(trial));
          break;
        }
        gamma *= cfg.backtrack;
      }

      window.push(k, gn, mu, x.values());
      std::optional<double> mval;
      const bool trace_due = (k - 1) % cfg.trace_stride == 0;
      if (metric && (cfg.metric_target.has_value() || trace_due)) mval = metric(x.values());
      if (trace_due) {
        TraceRow row;
        row.k = k;
        row.mu = mu;
        row.eta = 0.0;
        row.step = accepted ? gamma : 0.0;
        row.grad_norm = gn;
        row.f_smooth = f0;
        row.f_true = prob.true_value(x);
        row.metric = mval;
        row.elapsed_s = timed ? seconds_since(t0) : 0.0;
        res.trace.push_back(row);
      }

      // Checked before the accepted step is applied so the final iterate is
      // the one that met the target.
      if (cfg.metric_target && mval && *mval <= *cfg.metric_target) {
        res.iterations = k;
        res.stop = StopReason::MetricTarget;
        break;
      }

      res.iterations = k;
      if (accepted) {
        x = *next;
      } else {
        // Line search exhausted: halve the smoothing level and retry from the
        // same iterate.
        mu *= 0.5;
        if (mu < cfg.mu_floor) {
          res.stop = StopReason::MuFloor;
          break;
        }
      }

      if (cfg.epsilon) {
        const auto& best = window.best();
        if (best.grad_norm <= *cfg.epsilon && best.mu <= *cfg.epsilon) {
          res.stop = StopReason::EpsilonStationary;
          break;
        }
      }
    } catch (const NumericError& err) {
      res.stop = StopReason::NumericFailure;
      res.message = std::string(err.what()) + " (iteration " + std::to_string(k) + ")";
      break;
    }
  }

  res.wall_seconds = seconds_since(t0);
  res.eta_last = 0.0;
  res.mu_last = mu;
  res.last = x.values();
  if (!window.empty()) {
    const auto& b = window.best();
    res.best = BestRecord{b.j, b.grad_norm, b.mu, window.best_point()};
    const Point bp = man.make_point(res.best->point);
    res.f_true_best = prob.true_value(bp);
    if (metric) res.metric_best = metric(res.best->point);
  }
  return res;
}

}  // namespace asrga
