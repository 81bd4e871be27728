#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asrga/composite.hpp"
#include "asrga/trace.hpp"

namespace asrga {

// Adaptive smoothing Riemannian gradient method. Iterations k = 1, 2, ...
// with X_0 = X_1:
//   mu_k  = max(k^(-1/(4-p)), mu_floor)
//   G_k   = grad f~_{mu_k}(X_k)               (Riemannian)
//   eta_k^2 = eta_{k-1}^2 + mu_k^(2-p) ||G_k||_F^2
//   X_{k+1} = R_{X_k}(-(mu_k^(2-p)/eta_k) G_k)
struct AsrgaConfig {
  double eta0 = 1e-6;
  double mu0 = 1.0;          // initial smoothing level; the schedule takes over at k = 1
  double mu_floor = 1e-8;
  long max_iters = 0;        // 0 = unset
  double max_seconds = 0.0;  // 0 = unset
  std::optional<double> epsilon;        // epsilon-approximate stationarity target
  std::optional<double> metric_target;  // stop once the run metric falls to/below this
  long trace_stride = 1;

  // Requires eta0 > 0, mu0 in (0,1], mu_floor > 0, stride >= 1, and at least
  // one of max_iters / max_seconds / epsilon set.
  void validate() const;
};

// Line-search baseline: Riemannian steepest descent on f~_mu with Armijo
// backtracking at fixed mu; mu shrinks by mu_shrink whenever the gradient
// norm falls to or below grad_trigger * mu. The mu-update trigger is a
// reconstruction (the underlying method is specified only by citation).
struct RssdConfig {
  double armijo_c1 = 1e-4;
  double backtrack = 0.5;
  double mu_shrink = 0.5;
  double grad_trigger = 1.0;
  int max_backtracks = 50;
  double mu0 = 1.0;
  double mu_floor = 1e-8;
  long max_iters = 0;
  double max_seconds = 0.0;
  std::optional<double> epsilon;
  std::optional<double> metric_target;
  long trace_stride = 1;

  void validate() const;
};

enum class StopReason {
  EpsilonStationary,
  IterBudget,
  TimeBudget,
  MetricTarget,
  MuFloor,
  NumericFailure,
};

std::string to_string(StopReason r);

// Sliding-window argmin of gradient norms over j in [floor(k/2), k], with the
// argmin's Point retained. Candidates form a monotone deque: each push pops
// strictly larger norms from the back, so the front is always the earliest
// minimum of the live window. keep_records additionally retains every scalar
// record for brute-force cross-checks (test use; memory O(k)).
class SlidingWindowBest {
 public:
  struct Entry {
    long j = 0;
    double grad_norm = 0.0;
    double mu = 0.0;
  };

  explicit SlidingWindowBest(bool keep_records = false) : keep_records_(keep_records) {}

  void push(long j, double grad_norm, double mu, const Matrix& point);

  bool empty() const { return candidates_.empty(); }
  const Entry& best() const;
  const Matrix& best_point() const;
  long window_begin() const { return window_begin_; }
  std::size_t candidate_count() const { return candidates_.size(); }

  // Linear scan over retained records (requires keep_records).
  Entry brute_force_best() const;

 private:
  struct Candidate {
    Entry e;
    Matrix point;
  };
  std::deque<Candidate> candidates_;
  std::deque<Entry> records_;
  long window_begin_ = 0;
  bool keep_records_ = false;
};

struct BestRecord {
  long k = 0;
  double grad_norm = 0.0;
  double mu = 0.0;
  Matrix point;
};

struct SolveResult {
  std::string solver;
  StopReason stop = StopReason::IterBudget;
  std::string message;             // diagnostics on numeric failure
  long iterations = 0;             // completed solver steps
  long retractions = 0;
  double wall_seconds = 0.0;
  Matrix last;                     // final iterate
  std::optional<BestRecord> best;  // window-best iterate (absent for 0-iteration runs)
  std::optional<double> f_true_best;
  std::optional<double> metric_best;
  double eta_last = 0.0;
  double mu_last = 0.0;
  std::vector<TraceRow> trace;
};

// Problem-specific recovery error evaluated at an iterate (raw values).
using MetricFn = std::function<double(const Matrix&)>;

// x0 defaults to manifold.random_point(seed). All three runners share the
// window-best bookkeeping and budget handling; wall time is checked once per
// iteration. elapsed_s in trace rows is real time only when max_seconds is
// set and 0 otherwise, keeping iteration-budget traces byte-reproducible.
SolveResult run_asrga(const CompositeProblem& prob, const AsrgaConfig& cfg,
                      std::uint64_t seed, std::optional<Matrix> x0 = std::nullopt,
                      MetricFn metric = nullptr);

// Same schedule and bookkeeping as ASRGA but eta_k^2 = eta_{k-1}^2 + ||G_k||^2
// and step 1/eta_k (no mu^(2-p) scaling).
SolveResult run_naive_adagrad(const CompositeProblem& prob, const AsrgaConfig& cfg,
                              std::uint64_t seed, std::optional<Matrix> x0 = std::nullopt,
                              MetricFn metric = nullptr);

SolveResult run_rssd(const CompositeProblem& prob, const RssdConfig& cfg, std::uint64_t seed,
                     std::optional<Matrix> x0 = std::nullopt, MetricFn metric = nullptr);

// The ASRGA smoothing schedule, exposed for tests and the rate tooling.
double mu_schedule(long k, double p, double mu_floor);

}  // namespace asrga
