#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sketchseed/point_set.hpp"
#include "sketchseed/seeding.hpp"
#include "sketchseed/sketch.hpp"

namespace sketchseed {

struct RunParams {
  std::size_t n = 150;
  std::size_t d = 150;
  std::size_t m = 75;  // 0 = sketch dimension formula
  std::size_t k = 15;
  std::size_t z = 0;  // used when z_auto is false
  bool z_auto = true;
  double z_constant = 100.0;
  double epsilon = 0.05;
  double delta = 0.01;
  SketchKind sketch = SketchKind::kGaussian;
  std::uint64_t seed = 1;  // master; data/sketch/algorithm streams derive
  bool exact_eval = false;
  Distribution distribution = Distribution::kUnitSphere;
  MixtureParams mixture{};
};

struct DerivedSeeds {
  std::uint64_t data = 0;
  std::uint64_t sketch = 0;
  std::uint64_t fast_algo = 0;
  std::uint64_t baseline_algo = 0;
};

DerivedSeeds derive_seeds(std::uint64_t master);

struct RunReport {
  RunParams params;
  std::size_t resolved_m = 0;
  std::size_t resolved_z = 0;
  DerivedSeeds seeds;
  double baseline_total_ms = 0.0;
  double fast_init_ms = 0.0;
  double fast_total_ms = 0.0;
  double fast_post_init_per_round_ms = 0.0;
  double speedup = 0.0;  // baseline_total / fast_total
  double fast_final_cost_approx = 0.0;
  double fast_final_cost_exact = 0.0;
  double baseline_final_cost = 0.0;
  CostTrajectory fast_trajectory;
  CostTrajectory baseline_trajectory;
};

// Generates one data set and runs the baseline and the fast algorithm on
// it with independent algorithm streams, timing each phase.
RunReport run_single(const RunParams& params);

enum class SweepParam { kN, kD, kM, kK };

std::string to_string(SweepParam param);
SweepParam sweep_param_from_string(const std::string& name);

struct SweepSpec {
  SweepParam varying = SweepParam::kN;
  std::vector<std::size_t> values;  // strictly increasing
  RunParams fixed{};
  std::size_t trials = 1;  // per value, after one discarded warm-up
  std::uint64_t base_seed = 1;
};

struct SweepPointStats {
  std::size_t value = 0;
  double baseline_total_mean = 0.0, baseline_total_stddev = 0.0;
  double fast_total_mean = 0.0, fast_total_stddev = 0.0;
  double fast_init_mean = 0.0;
  double fast_post_round_mean = 0.0;
  double speedup_mean = 0.0;
};

struct SweepTrialRow {
  std::size_t value = 0;
  std::size_t trial = 0;
  RunReport report;
};

struct SweepResult {
  SweepParam varying = SweepParam::kN;
  std::vector<SweepTrialRow> trials;
  std::vector<SweepPointStats> stats;
};

// One warm-up plus `trials` timed runs per value; aggregates exclude the
// warm-up. Caps m at d (with a warning on stderr) where a combination
// would violate it.
SweepResult run_sweep(const SweepSpec& spec);

// CSV emission. The main file holds one row per trial plus mean/stddev
// rows per value; the companion "<stem>_plot.csv" holds the aggregate
// curves (x = swept value, y = mean times).
std::string report_csv_header();
std::string report_csv_row(const RunReport& report, const std::string& kind,
                           const std::string& param, std::size_t value,
                           std::ptrdiff_t trial);
void write_sweep_csv(const SweepResult& result, const std::string& path);
void write_report_csv(const RunReport& report, const std::string& path);
void write_trajectory_csv(const CostTrajectory& trajectory,
                          const std::string& path);

// Least-squares slope of ln(y) against ln(x). Requires >= 2 points,
// positive values.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

struct ScalingClaim {
  std::string name;
  double slope = 0.0;  // or ratio, for the ratio claim
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
  bool informational = false;  // reported but never gates all_pass
};

struct ScalingVerdicts {
  std::vector<ScalingClaim> claims;
  bool all_pass = false;
};

struct ScalingInput {
  std::vector<SweepPointStats> n_sweep;
  std::vector<SweepPointStats> d_sweep;
  std::vector<SweepPointStats> m_sweep;
  std::vector<SweepPointStats> k_sweep;
};

// Fits log-log slopes per swept parameter and checks them against the
// expected bands (time vs n in [0.8, 1.3] for both algorithms; fast
// post-init per-round time vs d in [-0.2, 0.3] with max/min ratio <= 1.3;
// fast total vs m in [0.7, 1.3]; time vs k in [1.6, 2.6] for both).
// Throws when a provided sweep has fewer than 2 points or spans less than
// a 2x range.
ScalingVerdicts scaling_check(const ScalingInput& input);

struct ScalingSweepOptions {
  std::size_t trials = 2;
  std::uint64_t seed = 1;
  bool quick = false;      // small smoke-test grids
  std::string out_dir;     // when set, one CSV per sweep lands here
  bool verbose = false;    // progress lines on stderr
};

// Runs the four canonical sweeps (n in {250,500,1000,2000} at d=100 m=50
// k=10; d in {100,200,400,800} at n=1000 m=50 k=10; m in {25,50,100} at
// n=1000 d=200 k=10; k in {5,10,20} at n=1000 d=100 m=50).
ScalingInput run_scaling_sweeps(const ScalingSweepOptions& options);

std::string format_verdict_table(const ScalingVerdicts& verdicts);

struct QualitySpec {
  std::size_t n = 500;
  std::size_t d = 50;
  std::size_t k = 5;
  MixtureParams mixture{5, 10.0, 1.0};
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  double epsilon = 0.05;
  double delta = 0.01;
  SketchKind sketch = SketchKind::kGaussian;
  // Quality trials carry no timing, so they may run concurrently. Off by
  // default; results are identical either way (per-trial seeds are
  // derived up front).
  bool parallel = false;
};

struct QualityStats {
  double opt_proxy = 0.0;  // exact cost against the generating means
  std::vector<double> ratios;
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
  bool hard_pass = false;  // max <= 509
  bool soft_pass = false;  // mean <= 2 (warning level)
};

// Seeds `trials` runs on one mixture instance and reports final exact
// cost over the generating-center cost.
QualityStats quality_check(const QualitySpec& spec);

}  // namespace sketchseed
