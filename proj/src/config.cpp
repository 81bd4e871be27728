#include "asrga/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "asrga/errors.hpp"
#include "asrga/matrix_io.hpp"

namespace asrga {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
}

void reject_unknown(const json& obj, const std::string& section,
                    const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail("section '" + section + "' must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.contains(it.key()))
      fail("unknown key '" + it.key() + "' in section '" + section + "'");
}

double get_number(const json& obj, const std::string& section, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail("'" + section + "." + key + "' must be a number");
  return v.get<double>();
}

long get_integer(const json& obj, const std::string& section, const std::string& key,
                 long fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail("'" + section + "." + key + "' must be an integer");
  return v.get<long>();
}

std::string get_string(const json& obj, const std::string& section, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail("'" + section + "." + key + "' must be a string");
  return v.get<std::string>();
}

void check_p(double p, const std::string& field) {
  if (!(p > 0.0) || p > 1.0)
    fail("'" + field + "' must lie in (0, 1], got " + format_double(p));
}

struct BudgetFields {
  long max_iters = 0;
  double max_seconds = 0.0;
  std::optional<double> epsilon;
  std::optional<double> metric_target;
};

BudgetFields parse_budget(const json& root) {
  BudgetFields b;
  if (!root.contains("budget")) fail("missing required section 'budget'");
  const json& obj = root.at("budget");
  reject_unknown(obj, "budget", {"max_iters", "max_seconds", "epsilon", "metric_target"});
  b.max_iters = get_integer(obj, "budget", "max_iters", 0);
  b.max_seconds = get_number(obj, "budget", "max_seconds", 0.0);
  if (b.max_iters < 0) fail("'budget.max_iters' must be >= 0");
  if (b.max_seconds < 0) fail("'budget.max_seconds' must be >= 0");
  if (obj.contains("epsilon")) {
    const double e = get_number(obj, "budget", "epsilon", 0.0);
    if (!(e > 0.0)) fail("'budget.epsilon' must be positive");
    b.epsilon = e;
  }
  if (obj.contains("metric_target")) {
    const double t = get_number(obj, "budget", "metric_target", 0.0);
    if (!(t >= 0.0)) fail("'budget.metric_target' must be >= 0");
    b.metric_target = t;
  }
  if (b.max_iters == 0 && b.max_seconds == 0.0 && !b.epsilon)
    fail("'budget' must set at least one of max_iters, max_seconds, epsilon");
  return b;
}

void parse_problem(const json& root, RunConfig& cfg) {
  if (!root.contains("problem")) fail("missing required section 'problem'");
  const json& obj = root.at("problem");
  reject_unknown(obj, "problem",
                 {"kind", "p", "n", "s", "m", "inliers", "outliers", "theta", "noise", "lambda",
                  "alpha", "data_file", "ground_truth_file"});
  const std::string kind = get_string(obj, "problem", "kind", "");
  if (kind.empty()) fail("'problem.kind' is required");
  try {
    cfg.kind = problem_kind_from_string(kind);
  } catch (const ParameterError& e) {
    fail(std::string("'problem.kind': ") + e.what());
  }
  cfg.p = get_number(obj, "problem", "p", 0.5);
  check_p(cfg.p, "problem.p");
  cfg.n = get_integer(obj, "problem", "n", 10);
  cfg.s = get_integer(obj, "problem", "s", cfg.kind == ProblemKind::Sdl ? cfg.n : 1);
  cfg.m = get_integer(obj, "problem", "m", 0);
  cfg.inliers = get_integer(obj, "problem", "inliers", 0);
  cfg.outliers = get_integer(obj, "problem", "outliers", 0);
  cfg.theta = get_number(obj, "problem", "theta", 0.5);
  cfg.noise = get_number(obj, "problem", "noise", 0.0);
  cfg.lambda = get_number(obj, "problem", "lambda", 0.5);
  cfg.alpha = get_number(obj, "problem", "alpha", 0.0);
  cfg.data_file = get_string(obj, "problem", "data_file", "");
  cfg.ground_truth_file = get_string(obj, "problem", "ground_truth_file", "");
  if (cfg.data_file.empty()) {
    if (cfg.n < 2) fail("'problem.n' must be >= 2");
    if (cfg.s < 1) fail("'problem.s' must be >= 1");
    if (cfg.kind == ProblemKind::Dpcp && cfg.inliers < 1)
      fail("'problem.inliers' must be >= 1 for synthetic dpcp");
    if (!(cfg.theta > 0.0) || cfg.theta >= 1.0) fail("'problem.theta' must lie in (0, 1)");
    if (cfg.noise < 0.0) fail("'problem.noise' must be >= 0");
  }
  if (!(cfg.lambda > 0.0)) fail("'problem.lambda' must be positive");
  if (cfg.alpha < 0.0) fail("'problem.alpha' must be >= 0 (0 = derive from data)");
}

void parse_solver_selection(const json& root, RunConfig& cfg) {
  const std::string sel = get_string(root, "<top>", "solver", "asrga");
  if (sel == "all") {
    cfg.solvers = {"asrga", "rssd", "naive_adagrad"};
  } else if (sel == "asrga" || sel == "rssd" || sel == "naive_adagrad") {
    cfg.solvers = {sel};
  } else {
    fail("'solver' must be one of asrga, rssd, naive_adagrad, all; got '" + sel + "'");
  }
}

void parse_asrga(const json& root, AsrgaConfig& a) {
  if (!root.contains("asrga")) return;
  const json& obj = root.at("asrga");
  reject_unknown(obj, "asrga", {"eta0", "mu0", "mu_floor"});
  a.eta0 = get_number(obj, "asrga", "eta0", a.eta0);
  a.mu0 = get_number(obj, "asrga", "mu0", a.mu0);
  a.mu_floor = get_number(obj, "asrga", "mu_floor", a.mu_floor);
  if (!(a.eta0 > 0.0)) fail("'asrga.eta0' must be positive");
  if (!(a.mu0 > 0.0) || a.mu0 > 1.0) fail("'asrga.mu0' must lie in (0, 1]");
  if (!(a.mu_floor > 0.0)) fail("'asrga.mu_floor' must be positive");
}

void parse_rssd(const json& root, RssdConfig& r) {
  if (!root.contains("rssd")) return;
  const json& obj = root.at("rssd");
  reject_unknown(obj, "rssd",
                 {"armijo_c1", "backtrack", "mu_shrink", "grad_trigger", "max_backtracks", "mu0",
                  "mu_floor"});
  r.armijo_c1 = get_number(obj, "rssd", "armijo_c1", r.armijo_c1);
  r.backtrack = get_number(obj, "rssd", "backtrack", r.backtrack);
  r.mu_shrink = get_number(obj, "rssd", "mu_shrink", r.mu_shrink);
  r.grad_trigger = get_number(obj, "rssd", "grad_trigger", r.grad_trigger);
  r.max_backtracks = static_cast<int>(get_integer(obj, "rssd", "max_backtracks", r.max_backtracks));
  r.mu0 = get_number(obj, "rssd", "mu0", r.mu0);
  r.mu_floor = get_number(obj, "rssd", "mu_floor", r.mu_floor);
  if (!(r.armijo_c1 > 0.0) || r.armijo_c1 >= 1.0) fail("'rssd.armijo_c1' must lie in (0, 1)");
  if (!(r.backtrack > 0.0) || r.backtrack >= 1.0) fail("'rssd.backtrack' must lie in (0, 1)");
  if (!(r.mu_shrink > 0.0) || r.mu_shrink >= 1.0) fail("'rssd.mu_shrink' must lie in (0, 1)");
  if (!(r.grad_trigger > 0.0)) fail("'rssd.grad_trigger' must be positive");
  if (r.max_backtracks < 1) fail("'rssd.max_backtracks' must be >= 1");
  if (!(r.mu0 > 0.0) || r.mu0 > 1.0) fail("'rssd.mu0' must lie in (0, 1]");
  if (!(r.mu_floor > 0.0)) fail("'rssd.mu_floor' must be positive");
}

}  // namespace

void RunConfig::validate() const {
  asrga.validate();
  rssd.validate();
}

RunConfig parse_run_config(const std::string& json_text) {
  const json root = parse_json(json_text);
  reject_unknown(root, "<top>",
                 {"problem", "solver", "budget", "asrga", "rssd", "seed", "out_dir", "stride"});
  RunConfig cfg;
  parse_problem(root, cfg);
  parse_solver_selection(root, cfg);
  const BudgetFields b = parse_budget(root);
  parse_asrga(root, cfg.asrga);
  parse_rssd(root, cfg.rssd);
  const long seed = get_integer(root, "<top>", "seed", 0);
  if (seed < 0) fail("'seed' must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.out_dir = get_string(root, "<top>", "out_dir", "out");
  const long stride = get_integer(root, "<top>", "stride", 1);
  if (stride < 1) fail("'stride' must be >= 1");

  cfg.asrga.max_iters = b.max_iters;
  cfg.asrga.max_seconds = b.max_seconds;
  cfg.asrga.epsilon = b.epsilon;
  cfg.asrga.metric_target = b.metric_target;
  cfg.asrga.trace_stride = stride;
  cfg.rssd.max_iters = b.max_iters;
  cfg.rssd.max_seconds = b.max_seconds;
  cfg.rssd.epsilon = b.epsilon;
  cfg.rssd.metric_target = b.metric_target;
  cfg.rssd.trace_stride = stride;
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

ProblemInstance instance_from_config(const RunConfig& cfg) {
  if (!cfg.data_file.empty()) {
    Matrix data = read_matrix(cfg.data_file);
    ProblemInstance inst;
    switch (cfg.kind) {
      case ProblemKind::Spca: inst = make_spca(std::move(data), cfg.s, cfg.lambda, cfg.p); break;
      case ProblemKind::Dpcp: inst = make_dpcp(std::move(data), cfg.p); break;
      case ProblemKind::Sdl: inst = make_sdl(std::move(data), cfg.p); break;
      case ProblemKind::NonnegOrth: {
        double alpha = cfg.alpha;
        if (alpha <= 0.0) alpha = 1.25 * nonneg_orth_alpha_threshold(data, cfg.s);
        inst = make_nonneg_orth(std::move(data), cfg.s, alpha, cfg.p);
        break;
      }
    }
    if (!cfg.ground_truth_file.empty()) inst.ground_truth = read_matrix(cfg.ground_truth_file);
    return inst;
  }

  switch (cfg.kind) {
    case ProblemKind::Sdl: {
      SyntheticSpec spec;
      spec.kind = SyntheticKind::SdlBernoulliGaussian;
      spec.n = cfg.n;
      spec.m = cfg.m;
      spec.theta = cfg.theta;
      spec.p = cfg.p;
      spec.seed = cfg.seed;
      return generate(spec);
    }
    case ProblemKind::Dpcp: {
      SyntheticSpec spec;
      spec.kind = SyntheticKind::DpcpInlierOutlier;
      spec.n = cfg.n;
      spec.inliers = cfg.inliers;
      spec.outliers = cfg.outliers;
      spec.noise = cfg.noise;
      spec.p = cfg.p;
      spec.seed = cfg.seed;
      return generate(spec);
    }
    case ProblemKind::Spca: {
      SyntheticSpec spec;
      spec.kind = SyntheticKind::SpcaGaussian;
      spec.n = cfg.n;
      spec.s = cfg.s;
      spec.m = cfg.m;
      spec.p = cfg.p;
      spec.lambda = cfg.lambda;
      spec.seed = cfg.seed;
      return generate(spec);
    }
    case ProblemKind::NonnegOrth: {
      InstanceDims dims{cfg.n, cfg.s, cfg.m};
      InstanceHyperparams hyper{cfg.p, cfg.lambda, cfg.alpha};
      return make_instance(ProblemKind::NonnegOrth, dims, hyper, cfg.seed);
    }
  }
  fail("unreachable problem kind");
}

SyntheticSpec parse_synthetic_spec(const std::string& json_text) {
  const json root = parse_json(json_text);
  reject_unknown(root, "<top>",
                 {"kind", "n", "s", "m", "inliers", "outliers", "theta", "noise", "p", "lambda",
                  "seed"});
  SyntheticSpec spec;
  const std::string kind = get_string(root, "<top>", "kind", "");
  if (kind.empty()) fail("'kind' is required");
  try {
    spec.kind = synthetic_kind_from_string(kind);
  } catch (const ParameterError& e) {
    fail(std::string("'kind': ") + e.what());
  }
  spec.n = get_integer(root, "<top>", "n", 10);
  spec.s = get_integer(root, "<top>", "s", 1);
  spec.m = get_integer(root, "<top>", "m", 0);
  spec.inliers = get_integer(root, "<top>", "inliers", 0);
  spec.outliers = get_integer(root, "<top>", "outliers", 0);
  spec.theta = get_number(root, "<top>", "theta", 0.5);
  spec.noise = get_number(root, "<top>", "noise", 0.0);
  spec.p = get_number(root, "<top>", "p", 0.5);
  check_p(spec.p, "p");
  spec.lambda = get_number(root, "<top>", "lambda", 0.5);
  const long seed = get_integer(root, "<top>", "seed", 0);
  if (seed < 0) fail("'seed' must be >= 0");
  spec.seed = static_cast<std::uint64_t>(seed);
  try {
    spec.validate();
  } catch (const ParameterError& e) {
    fail(e.what());
  }
  return spec;
}

SyntheticSpec load_synthetic_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open spec file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_synthetic_spec(ss.str());
}

std::uint64_t x0_seed(std::uint64_t config_seed) {
  return config_seed ^ 0x9E3779B97F4A7C15ULL;
}

}  // namespace asrga
