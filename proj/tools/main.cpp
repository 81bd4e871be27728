// asrga command line front end: solve / compare / check / gen.
//
// Exit codes: 0 success, 1 property-check or solver failure, 2 usage or
// configuration error.

#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asrga/checks.hpp"
#include "asrga/config.hpp"
#include "asrga/errors.hpp"
#include "asrga/matrix_io.hpp"
#include "asrga/metrics.hpp"
#include "asrga/solvers.hpp"

namespace {

using namespace asrga;
namespace fs = std::filesystem;

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt6(*v) : std::string("-"); }

struct Overrides {
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  long stride = 0;
  bool quiet = false;
};

RunConfig load_with_overrides(const std::string& path, const Overrides& ov) {
  RunConfig cfg = load_run_config(path);
  if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
  if (ov.seed_set) cfg.seed = ov.seed;
  if (ov.stride > 0) {
    cfg.asrga.trace_stride = ov.stride;
    cfg.rssd.trace_stride = ov.stride;
  }
  cfg.validate();
  return cfg;
}

SolveResult run_one(const std::string& name, const CompositeProblem& prob, const RunConfig& cfg,
                    const Matrix& x0, const MetricFn& metric) {
  if (name == "asrga") return run_asrga(prob, cfg.asrga, cfg.seed, x0, metric);
  if (name == "naive_adagrad") return run_naive_adagrad(prob, cfg.asrga, cfg.seed, x0, metric);
  return run_rssd(prob, cfg.rssd, cfg.seed, x0, metric);
}

ReportEntries make_report(const SolveResult& r, const RunConfig& cfg,
                          const ProblemInstance& inst) {
  ReportEntries e;
  e.emplace_back("solver", r.solver);
  e.emplace_back("problem", to_string(inst.kind));
  e.emplace_back("manifold", to_string(inst.manifold.kind));
  e.emplace_back("rows", std::to_string(inst.manifold.rows));
  e.emplace_back("cols", std::to_string(inst.manifold.cols));
  e.emplace_back("p", format_double(inst.p));
  e.emplace_back("seed", std::to_string(cfg.seed));
  e.emplace_back("stop", to_string(r.stop));
  if (!r.message.empty()) e.emplace_back("message", r.message);
  e.emplace_back("iterations", std::to_string(r.iterations));
  e.emplace_back("retractions", std::to_string(r.retractions));
  e.emplace_back("wall_seconds", format_double(r.wall_seconds));
  if (r.best) {
    e.emplace_back("best_k", std::to_string(r.best->k));
    e.emplace_back("best_grad_norm", format_double(r.best->grad_norm));
    e.emplace_back("best_mu", format_double(r.best->mu));
  }
  if (r.f_true_best) e.emplace_back("best_f_true", format_double(*r.f_true_best));
  if (r.metric_best) e.emplace_back("best_metric", format_double(*r.metric_best));
  e.emplace_back("eta_last", format_double(r.eta_last));
  e.emplace_back("mu_last", format_double(r.mu_last));
  e.emplace_back("trace_rows", std::to_string(r.trace.size()));
  return e;
}

// Runs the listed solvers from a shared initial iterate, persisting one trace
// and one report per solver. Returns the results in order.
std::vector<SolveResult> run_and_persist(const RunConfig& cfg,
                                         const std::vector<std::string>& solvers,
                                         const ProblemInstance& inst, bool quiet) {
  const CompositeProblem prob = build_problem(inst);
  const MetricFn metric = metric_for(inst);
  const Manifold manifold(inst.manifold);
  const Matrix x0 = manifold.random_point(x0_seed(cfg.seed)).values();
  fs::create_directories(cfg.out_dir);

  if (!quiet)
    for (const auto& note : inst.notes) std::cout << "note: " << note << "\n";

  std::vector<SolveResult> results;
  for (const auto& name : solvers) {
    SolveResult r = run_one(name, prob, cfg, x0, metric);
    const std::string trace_path = cfg.out_dir + "/" + name + "_trace.csv";
    write_trace_csv(trace_path, r.trace);
    write_report(cfg.out_dir + "/" + name + "_report.txt", make_report(r, cfg, inst));
    if (!quiet) {
      std::cout << name << ": stop=" << to_string(r.stop) << " iters=" << r.iterations
                << " wall=" << fmt6(r.wall_seconds) << "s";
      if (r.best) std::cout << " best_grad=" << fmt6(r.best->grad_norm);
      std::cout << " f_true=" << fmt_opt(r.f_true_best) << " metric=" << fmt_opt(r.metric_best)
                << " -> " << trace_path << "\n";
      if (!r.message.empty()) std::cout << name << ": " << r.message << "\n";
    }
    results.push_back(std::move(r));
  }
  return results;
}

int cmd_solve(const std::string& config_path, const Overrides& ov) {
  const RunConfig cfg = load_with_overrides(config_path, ov);
  const ProblemInstance inst = instance_from_config(cfg);
  const auto results = run_and_persist(cfg, cfg.solvers, inst, ov.quiet);
  for (const auto& r : results)
    if (r.stop == StopReason::NumericFailure) return 1;
  return 0;
}

int cmd_compare(const std::string& config_path, const Overrides& ov) {
  RunConfig cfg = load_with_overrides(config_path, ov);
  const ProblemInstance inst = instance_from_config(cfg);
  const std::vector<std::string> solvers = {"asrga", "rssd", "naive_adagrad"};
  const auto results = run_and_persist(cfg, solvers, inst, /*quiet=*/true);

  if (!ov.quiet)
    for (const auto& note : inst.notes) std::cout << "note: " << note << "\n";
  std::ostringstream table;
  table << std::left << std::setw(15) << "solver" << std::right << std::setw(20) << "stop"
        << std::setw(10) << "iters" << std::setw(10) << "retract" << std::setw(12) << "wall_s"
        << std::setw(14) << "f_true" << std::setw(14) << "metric" << std::setw(14) << "best_grad"
        << "\n";
  for (const auto& r : results) {
    table << std::left << std::setw(15) << r.solver << std::right << std::setw(20)
          << to_string(r.stop) << std::setw(10) << r.iterations << std::setw(10) << r.retractions
          << std::setw(12) << fmt6(r.wall_seconds) << std::setw(14) << fmt_opt(r.f_true_best)
          << std::setw(14) << fmt_opt(r.metric_best) << std::setw(14)
          << (r.best ? fmt6(r.best->grad_norm) : std::string("-")) << "\n";
  }
  std::cout << table.str();

  for (const auto& r : results)
    if (r.stop == StopReason::NumericFailure) return 1;
  return 0;
}

int cmd_check(const std::string& suite, const std::string& trace_file, double rate_p,
              bool corrupt) {
  std::vector<CheckResult> results;
  if (suite == "smoothing") {
    results = check_smoothing();
  } else if (suite == "manifolds") {
    results = check_manifolds();
  } else if (suite == "gradients") {
    results = check_gradients(corrupt);
  } else {
    std::optional<std::vector<TraceRow>> rows;
    if (!trace_file.empty()) rows = read_trace_csv(trace_file);
    results = check_rate(rows, rate_p);
  }
  for (const auto& r : results) {
    std::printf("[%s] %-44s slack=% .3e  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.slack,
                r.detail.c_str());
  }
  const bool ok = all_pass(results);
  std::printf("%s: %zu checks, %s\n", suite.c_str(), results.size(), ok ? "all passed" : "FAILED");
  return ok ? 0 : 1;
}

int cmd_gen(const std::string& spec_path, const std::string& out_path,
            const std::string& gt_path, bool quiet) {
  const SyntheticSpec spec = load_synthetic_spec(spec_path);
  const ProblemInstance inst = generate(spec);
  if (const fs::path parent = fs::path(out_path).parent_path(); !parent.empty())
    fs::create_directories(parent);
  write_matrix(out_path, inst.data);
  if (!gt_path.empty()) {
    if (!inst.ground_truth) {
      std::cerr << "gen: " << to_string(spec.kind) << " has no ground truth to write\n";
      return 1;
    }
    if (const fs::path parent = fs::path(gt_path).parent_path(); !parent.empty())
      fs::create_directories(parent);
    write_matrix(gt_path, *inst.ground_truth);
  }
  if (!quiet) {
    std::cout << "wrote " << out_path << " (" << inst.data.rows() << " x " << inst.data.cols()
              << ")\n";
    if (!gt_path.empty()) std::cout << "wrote " << gt_path << "\n";
    for (const auto& note : inst.notes) std::cout << "note: " << note << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive smoothing Riemannian gradient solver"};
  app.require_subcommand(1);

  std::string config_path, suite, trace_file, spec_path, out_path, gt_path;
  double rate_p = 0.5;
  bool corrupt = false;
  Overrides ov;

  CLI::App* solve = app.add_subcommand("solve", "Run the configured solver(s) on an instance");
  solve->add_option("config", config_path, "JSON run configuration")->required();

  CLI::App* compare = app.add_subcommand(
      "compare", "Run asrga, rssd and naive_adagrad from one shared initial iterate");
  compare->add_option("config", config_path, "JSON run configuration")->required();

  for (CLI::App* sub : {solve, compare}) {
    sub->add_option("--out-dir", ov.out_dir, "Override the configured output directory");
    sub->add_option("--seed", ov.seed, "Override the configured seed")
        ->each([&ov](const std::string&) { ov.seed_set = true; });
    sub->add_option("--stride", ov.stride, "Override the trace stride")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", ov.quiet, "Suppress per-run console output");
  }

  CLI::App* check = app.add_subcommand("check", "Run a verification suite");
  check->add_option("suite", suite, "smoothing | manifolds | gradients | rate")
      ->required()
      ->check(CLI::IsMember({"smoothing", "manifolds", "gradients", "rate"}));
  check->add_option("--trace", trace_file, "Trace CSV to test (rate suite; default in-process)");
  check->add_option("--p", rate_p, "Exponent the trace was produced with (rate suite)");
  check->add_flag("--corrupt-gradient", corrupt)->group("");  // negative-control hook

  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen->add_option("spec", spec_path, "JSON generator specification")->required();
  gen->add_option("out", out_path, "Output path for the data matrix")->required();
  gen->add_option("--ground-truth", gt_path, "Also write the ground truth matrix here");
  gen->add_flag("--quiet", ov.quiet, "Suppress console output");

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return cmd_solve(config_path, ov);
    if (compare->parsed()) return cmd_compare(config_path, ov);
    if (check->parsed()) return cmd_check(suite, trace_file, rate_p, corrupt);
    return cmd_gen(spec_path, out_path, gt_path, ov.quiet);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
