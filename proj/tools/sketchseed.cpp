// Command-line harness: synthetic data generation, single benchmark runs,
// parameter sweeps, and the scaling/quality checks.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sketchseed/bench.hpp"
#include "sketchseed/point_set.hpp"
#include "sketchseed/seeding.hpp"

namespace {

using namespace sketchseed;

struct CommonFlags {
  RunParams params;
  std::string sketch_name = "gaussian";
};

void add_run_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--n", flags.params.n, "number of points");
  cmd->add_option("--d", flags.params.d, "point dimensionality");
  cmd->add_option("--m", flags.params.m,
                  "sketch dimension (0 = formula, capped at d)");
  cmd->add_option("--k", flags.params.k, "number of centers");
  auto* z = cmd->add_option("--z", flags.params.z,
                            "local-search rounds (default: auto formula)");
  z->each([&flags](const std::string&) { flags.params.z_auto = false; });
  cmd->add_option("--z-constant", flags.params.z_constant,
                  "constant in the auto round formula");
  cmd->add_option("--epsilon", flags.params.epsilon, "sketch accuracy");
  cmd->add_option("--delta", flags.params.delta, "sketch failure budget");
  cmd->add_option("--sketch", flags.sketch_name,
                  "sketch kind: gaussian|rademacher|identity");
  cmd->add_option("--seed", flags.params.seed, "master seed");
  cmd->add_flag("--exact-eval", flags.params.exact_eval,
                "record exact cost per round (slow; pollutes timing)");
}

void finalize(CommonFlags& flags) {
  flags.params.sketch = sketch_kind_from_string(flags.sketch_name);
}

void print_report(const RunReport& r) {
  std::printf("n=%zu d=%zu m=%zu k=%zu z=%zu sketch=%s seed=%llu\n",
              r.params.n, r.params.d, r.resolved_m, r.params.k, r.resolved_z,
              to_string(r.params.sketch).c_str(),
              static_cast<unsigned long long>(r.params.seed));
  std::printf("baseline total   %10.3f ms   final cost %.6g\n",
              r.baseline_total_ms, r.baseline_final_cost);
  std::printf("fast init        %10.3f ms\n", r.fast_init_ms);
  std::printf("fast total       %10.3f ms   final cost %.6g (exact %.6g)\n",
              r.fast_total_ms, r.fast_final_cost_approx,
              r.fast_final_cost_exact);
  std::printf("fast per round   %10.3f ms (post-init)\n",
              r.fast_post_init_per_round_ms);
  std::printf("speedup          %10.2fx\n", r.speedup);
}

int run_check_scaling(std::size_t trials, std::uint64_t seed, bool quick,
                      const std::string& out_dir) {
  ScalingSweepOptions options;
  options.trials = trials;
  options.seed = seed;
  options.quick = quick;
  options.out_dir = out_dir;
  options.verbose = true;
  const ScalingVerdicts verdicts = scaling_check(run_scaling_sweeps(options));
  std::cout << format_verdict_table(verdicts);
  if (quick) {
    std::cout << "note: --quick grids smoke-test the machinery; the slope "
                 "bands are calibrated for the default grids\n";
  }
  return verdicts.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sketch-accelerated k-means++ seeding benchmark harness"};
  app.require_subcommand(1);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic dataset");
  GenSpec gen_spec;
  gen_spec.n = 150;
  gen_spec.d = 150;
  std::string gen_dist = "unit-sphere";
  std::string gen_out;
  gen_cmd->add_option("--n", gen_spec.n, "number of points");
  gen_cmd->add_option("--d", gen_spec.d, "dimensionality");
  gen_cmd->add_option("--seed", gen_spec.seed, "seed");
  gen_cmd->add_option("--dist", gen_dist, "unit-sphere|mixture");
  gen_cmd->add_option("--components", gen_spec.mixture.components,
                      "mixture components");
  gen_cmd->add_option("--separation", gen_spec.mixture.separation,
                      "mixture mean offset in sigmas");
  gen_cmd->add_option("--sigma", gen_spec.mixture.sigma, "mixture sigma");
  gen_cmd->add_option("--out", gen_out, "output path")->required();

  // run
  auto* run_cmd = app.add_subcommand("run", "one baseline-vs-fast report");
  CommonFlags run_flags;
  add_run_flags(run_cmd, run_flags);
  std::string run_out, trajectory_out;
  run_cmd->add_option("--out", run_out, "write the report row as CSV");
  run_cmd->add_option("--trajectory-out", trajectory_out,
                      "write the fast algorithm's per-round trajectory");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV");
  CommonFlags sweep_flags;
  add_run_flags(sweep_cmd, sweep_flags);
  std::string sweep_param = "n";
  std::vector<std::size_t> sweep_values;
  std::size_t sweep_trials = 1;
  std::string sweep_out;
  sweep_cmd->add_option("--param", sweep_param, "swept parameter: n|d|m|k")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "swept values, increasing")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--trials", sweep_trials, "trials per value");
  sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();

  // check-scaling
  auto* scaling_cmd =
      app.add_subcommand("check-scaling", "run the scaling sweeps and verdicts");
  std::size_t scaling_trials = 2;
  std::uint64_t scaling_seed = 1;
  bool scaling_quick = false;
  std::string scaling_out_dir;
  scaling_cmd->add_option("--trials", scaling_trials, "trials per value");
  scaling_cmd->add_option("--seed", scaling_seed, "base seed");
  scaling_cmd->add_flag("--quick", scaling_quick, "small smoke-test sweeps");
  scaling_cmd->add_option("--out-dir", scaling_out_dir,
                          "directory for the sweep CSVs");

  // check-quality
  auto* quality_cmd =
      app.add_subcommand("check-quality", "mixture-instance quality statistics");
  QualitySpec quality;
  std::string quality_sketch = "gaussian";
  quality_cmd->add_option("--n", quality.n, "points");
  quality_cmd->add_option("--d", quality.d, "dimensionality");
  quality_cmd->add_option("--k", quality.k, "centers");
  quality_cmd->add_option("--components", quality.mixture.components,
                          "mixture components");
  quality_cmd->add_option("--separation", quality.mixture.separation,
                          "mixture mean offset in sigmas");
  quality_cmd->add_option("--sigma", quality.mixture.sigma, "mixture sigma");
  quality_cmd->add_option("--trials", quality.trials, "seeding runs");
  quality_cmd->add_option("--seed", quality.seed, "master seed");
  quality_cmd->add_option("--epsilon", quality.epsilon, "sketch accuracy");
  quality_cmd->add_option("--delta", quality.delta, "sketch failure budget");
  quality_cmd->add_option("--sketch", quality_sketch,
                          "gaussian|rademacher|identity");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      gen_spec.distribution = gen_dist == "mixture"
                                  ? Distribution::kGaussianMixture
                                  : Distribution::kUnitSphere;
      if (gen_dist != "mixture" && gen_dist != "unit-sphere") {
        throw std::invalid_argument("unknown distribution '" + gen_dist + "'");
      }
      const PointSet points = generate(gen_spec);
      save_points(points, gen_out);
      std::printf("wrote %zu x %zu points to %s\n", points.n, points.d,
                  gen_out.c_str());
      return 0;
    }
    if (run_cmd->parsed()) {
      finalize(run_flags);
      const RunReport report = run_single(run_flags.params);
      print_report(report);
      if (!run_out.empty()) write_report_csv(report, run_out);
      if (!trajectory_out.empty()) {
        write_trajectory_csv(report.fast_trajectory, trajectory_out);
      }
      return 0;
    }
    if (sweep_cmd->parsed()) {
      finalize(sweep_flags);
      SweepSpec spec;
      spec.varying = sweep_param_from_string(sweep_param);
      spec.values = sweep_values;
      spec.fixed = sweep_flags.params;
      spec.trials = sweep_trials;
      spec.base_seed = sweep_flags.params.seed;
      const SweepResult result = run_sweep(spec);
      write_sweep_csv(result, sweep_out);
      std::printf("wrote %zu trial rows to %s\n", result.trials.size(),
                  sweep_out.c_str());
      return 0;
    }
    if (scaling_cmd->parsed()) {
      return run_check_scaling(scaling_trials, scaling_seed, scaling_quick,
                               scaling_out_dir);
    }
    if (quality_cmd->parsed()) {
      quality.sketch = sketch_kind_from_string(quality_sketch);
      const QualityStats stats = quality_check(quality);
      std::printf("opt proxy (generating centers): %.6g\n", stats.opt_proxy);
      std::printf("mean ratio %.4f   max ratio %.4f over %zu trials\n",
                  stats.mean_ratio, stats.max_ratio, stats.ratios.size());
      std::printf("hard bound (max <= 509): %s\n",
                  stats.hard_pass ? "pass" : "FAIL");
      if (!stats.soft_pass) {
        std::printf("warning: mean ratio above the 2x soft threshold\n");
      }
      return stats.hard_pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
