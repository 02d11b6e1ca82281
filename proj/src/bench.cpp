#include "sketchseed/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sketchseed/numeric.hpp"
#include "sketchseed/rng.hpp"
#include "sketchseed/timing.hpp"

namespace sketchseed {

DerivedSeeds derive_seeds(std::uint64_t master) {
  SplitMix64 sm(master);
  DerivedSeeds seeds;
  seeds.data = sm.next();
  seeds.sketch = sm.next();
  seeds.fast_algo = sm.next();
  seeds.baseline_algo = sm.next();
  return seeds;
}

namespace {

void validate_params(const RunParams& p) {
  if (p.n < 1 || p.d < 1) throw std::invalid_argument("n and d must be >= 1");
  if (p.k < 1) throw std::invalid_argument("k must be >= 1");
  if (p.k > p.n) throw std::invalid_argument("k must not exceed n");
  if (!p.z_auto && p.z == 0 && p.k >= 2) {
    // Explicit z = 0 disables local search; that is a valid request.
  }
  SketchSpec probe{p.epsilon, p.delta, 2.0, p.sketch, 0};
  validate_sketch_spec(probe);
}

SeedingConfig make_config(const RunParams& p, std::uint64_t sketch_seed,
                          std::uint64_t algo_seed) {
  SeedingConfig cfg;
  cfg.k = p.k;
  cfg.z = p.z;
  cfg.z_auto = p.z_auto;
  cfg.z_constant = p.z_constant;
  cfg.sketch = SketchSpec{p.epsilon, p.delta, 2.0, p.sketch, sketch_seed};
  cfg.seed = algo_seed;
  cfg.m_override = p.m;
  cfg.exact_eval = p.exact_eval;
  return cfg;
}

GenSpec make_gen_spec(const RunParams& p, std::uint64_t data_seed) {
  GenSpec g;
  g.n = p.n;
  g.d = p.d;
  g.seed = data_seed;
  g.distribution = p.distribution;
  g.mixture = p.mixture;
  return g;
}

}  // namespace

RunReport run_single(const RunParams& params) {
  RunParams p = params;
  if (p.m > p.d) {
    std::cerr << "warning: m = " << p.m << " capped at d = " << p.d << "\n";
    p.m = p.d;
  }
  validate_params(p);

  RunReport report;
  report.params = p;
  report.seeds = derive_seeds(p.seed);

  const PointSet points = generate(make_gen_spec(p, report.seeds.data));

  const SeedingConfig baseline_cfg =
      make_config(p, report.seeds.sketch, report.seeds.baseline_algo);
  const SeedingResult baseline = baseline_seeding(points, baseline_cfg);
  report.baseline_total_ms = baseline.total_ms;
  report.baseline_trajectory = baseline.trajectory;

  const SeedingConfig fast_cfg =
      make_config(p, report.seeds.sketch, report.seeds.fast_algo);
  const SeedingResult fast = fast_seeding(points, fast_cfg);
  report.fast_total_ms = fast.total_ms;
  report.fast_init_ms = fast.init_ms;
  report.fast_trajectory = fast.trajectory;
  report.resolved_m = fast.resolved_m;
  report.resolved_z = fast.resolved_z;

  const std::size_t rounds = fast.trajectory.records.size();
  report.fast_post_init_per_round_ms =
      (fast.total_ms - fast.init_ms) /
      static_cast<double>(std::max<std::size_t>(rounds, 1));
  report.speedup = report.fast_total_ms > 0.0
                       ? report.baseline_total_ms / report.fast_total_ms
                       : 0.0;
  report.fast_final_cost_approx =
      fast.trajectory.records.empty() ? 0.0
                                      : fast.trajectory.records.back().cost;
  // Final exact costs land outside the timed regions.
  report.fast_final_cost_exact = exact_cost(points, fast.centers);
  report.baseline_final_cost = exact_cost(points, baseline.centers);
  return report;
}

std::string to_string(SweepParam param) {
  switch (param) {
    case SweepParam::kN:
      return "n";
    case SweepParam::kD:
      return "d";
    case SweepParam::kM:
      return "m";
    case SweepParam::kK:
      return "k";
  }
  return "?";
}

SweepParam sweep_param_from_string(const std::string& name) {
  if (name == "n") return SweepParam::kN;
  if (name == "d") return SweepParam::kD;
  if (name == "m") return SweepParam::kM;
  if (name == "k") return SweepParam::kK;
  throw std::invalid_argument("unknown sweep parameter '" + name + "'");
}

namespace {

RunParams apply_value(const RunParams& fixed, SweepParam varying,
                      std::size_t value) {
  RunParams p = fixed;
  switch (varying) {
    case SweepParam::kN:
      p.n = value;
      break;
    case SweepParam::kD:
      p.d = value;
      break;
    case SweepParam::kM:
      p.m = value;
      break;
    case SweepParam::kK:
      p.k = value;
      break;
  }
  return p;
}

double mean_of(const std::vector<double>& xs) {
  return pairwise_sum(xs) / static_cast<double>(xs.size());
}

double stddev_of(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("sweep needs values");
  for (std::size_t i = 1; i < spec.values.size(); ++i) {
    if (spec.values[i] <= spec.values[i - 1]) {
      throw std::invalid_argument("sweep values must be strictly increasing");
    }
  }
  if (spec.trials < 1) throw std::invalid_argument("sweep needs trials >= 1");

  SweepResult result;
  result.varying = spec.varying;
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
    const std::size_t value = spec.values[vi];
    RunParams p = apply_value(spec.fixed, spec.varying, value);

    // One discarded warm-up run per value: first-touch allocator and
    // cache effects otherwise distort the smallest configurations.
    {
      RunParams warm = p;
      warm.seed = SplitMix64(spec.base_seed ^ (0x5157ull + vi)).next();
      (void)run_single(warm);
    }

    std::vector<double> baseline_ms, fast_ms, init_ms, round_ms, speedups;
    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
      RunParams tp = p;
      tp.seed = SplitMix64(spec.base_seed + vi * 100003ull + trial * 7919ull)
                    .next();
      RunReport report = run_single(tp);
      baseline_ms.push_back(report.baseline_total_ms);
      fast_ms.push_back(report.fast_total_ms);
      init_ms.push_back(report.fast_init_ms);
      round_ms.push_back(report.fast_post_init_per_round_ms);
      speedups.push_back(report.speedup);
      result.trials.push_back({value, trial, std::move(report)});
    }

    SweepPointStats stats;
    stats.value = value;
    stats.baseline_total_mean = mean_of(baseline_ms);
    stats.baseline_total_stddev =
        stddev_of(baseline_ms, stats.baseline_total_mean);
    stats.fast_total_mean = mean_of(fast_ms);
    stats.fast_total_stddev = stddev_of(fast_ms, stats.fast_total_mean);
    stats.fast_init_mean = mean_of(init_ms);
    stats.fast_post_round_mean = mean_of(round_ms);
    stats.speedup_mean = mean_of(speedups);
    result.stats.push_back(stats);
  }
  return result;
}

namespace {

std::string format_ms(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

std::string format_value(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

std::string report_csv_header() {
  return "kind,param,value,trial,n,d,m,k,z,epsilon,delta,sketch,seed,"
         "data_seed,sketch_seed,fast_seed,baseline_seed,"
         "baseline_total_ms,fast_init_ms,fast_total_ms,"
         "fast_post_init_per_round_ms,speedup,"
         "fast_final_cost_approx,fast_final_cost_exact,baseline_final_cost";
}

std::string report_csv_row(const RunReport& report, const std::string& kind,
                           const std::string& param, std::size_t value,
                           std::ptrdiff_t trial) {
  std::ostringstream row;
  row << kind << ',' << param << ',' << value << ',';
  if (trial >= 0) row << trial;
  const RunParams& p = report.params;
  row << ',' << p.n << ',' << p.d << ',' << report.resolved_m << ',' << p.k
      << ',' << report.resolved_z << ',' << format_value(p.epsilon) << ','
      << format_value(p.delta) << ',' << to_string(p.sketch) << ',' << p.seed
      << ',' << report.seeds.data << ',' << report.seeds.sketch << ','
      << report.seeds.fast_algo << ',' << report.seeds.baseline_algo << ','
      << format_ms(report.baseline_total_ms) << ','
      << format_ms(report.fast_init_ms) << ','
      << format_ms(report.fast_total_ms) << ','
      << format_ms(report.fast_post_init_per_round_ms) << ','
      << format_value(report.speedup) << ','
      << format_value(report.fast_final_cost_approx) << ','
      << format_value(report.fast_final_cost_exact) << ','
      << format_value(report.baseline_final_cost);
  return row.str();
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  return out;
}

std::string aggregate_csv_row(const std::string& kind, const std::string& param,
                              const SweepPointStats& stats,
                              const RunParams& fixed, bool stddev) {
  std::ostringstream row;
  row << kind << ',' << param << ',' << stats.value << ",,";
  row << fixed.n << ',' << fixed.d << ',' << fixed.m << ',' << fixed.k
      << ",,,,,,,,,,";
  if (!stddev) {
    row << format_ms(stats.baseline_total_mean) << ','
        << format_ms(stats.fast_init_mean) << ','
        << format_ms(stats.fast_total_mean) << ','
        << format_ms(stats.fast_post_round_mean) << ','
        << format_value(stats.speedup_mean) << ",,,";
  } else {
    row << format_ms(stats.baseline_total_stddev) << ",,"
        << format_ms(stats.fast_total_stddev) << ",,,,,";
  }
  return row.str();
}

}  // namespace

void write_report_csv(const RunReport& report, const std::string& path) {
  auto out = open_out(path);
  out << report_csv_header() << '\n'
      << report_csv_row(report, "trial", "-", 0, 0) << '\n';
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
  const std::string param = to_string(result.varying);
  auto out = open_out(path);
  out << report_csv_header() << '\n';
  for (const SweepTrialRow& row : result.trials) {
    out << report_csv_row(row.report, "trial", param, row.value,
                          static_cast<std::ptrdiff_t>(row.trial))
        << '\n';
  }
  for (const SweepPointStats& stats : result.stats) {
    const RunParams fixed =
        apply_value(result.trials.empty() ? RunParams{}
                                          : result.trials.front().report.params,
                    result.varying, stats.value);
    out << aggregate_csv_row("mean", param, stats, fixed, false) << '\n';
    out << aggregate_csv_row("stddev", param, stats, fixed, true) << '\n';
  }

  std::string plot_path = path;
  const std::size_t dot = plot_path.rfind('.');
  if (dot != std::string::npos) {
    plot_path = plot_path.substr(0, dot) + "_plot" + plot_path.substr(dot);
  } else {
    plot_path += "_plot.csv";
  }
  auto plot = open_out(plot_path);
  plot << "param,value,baseline_total_ms_mean,baseline_total_ms_stddev,"
          "fast_total_ms_mean,fast_total_ms_stddev,fast_init_ms_mean,"
          "fast_post_init_per_round_ms_mean,speedup_mean\n";
  for (const SweepPointStats& s : result.stats) {
    plot << param << ',' << s.value << ','
         << format_ms(s.baseline_total_mean) << ','
         << format_ms(s.baseline_total_stddev) << ','
         << format_ms(s.fast_total_mean) << ','
         << format_ms(s.fast_total_stddev) << ','
         << format_ms(s.fast_init_mean) << ','
         << format_ms(s.fast_post_round_mean) << ','
         << format_value(s.speedup_mean) << '\n';
  }
}

void write_trajectory_csv(const CostTrajectory& trajectory,
                          const std::string& path) {
  auto out = open_out(path);
  out << "round,phase,cost,exact_cost,duration_ms\n";
  for (std::size_t i = 0; i < trajectory.records.size(); ++i) {
    const TrajectoryRecord& rec = trajectory.records[i];
    const char* phase = rec.phase == Phase::kSeedUniform ? "seed-uniform"
                        : rec.phase == Phase::kD2Round   ? "d2-round"
                                                         : "local-search-round";
    out << i << ',' << phase << ',' << format_value(rec.cost) << ',';
    if (rec.exact_cost) out << format_value(*rec.exact_cost);
    out << ',' << format_ms(rec.duration_ms) << '\n';
  }
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs >= 2 matched points");
  }
  const std::size_t n = x.size();
  double mean_lx = 0.0, mean_ly = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("slope fit needs positive values");
    }
    mean_lx += std::log(x[i]);
    mean_ly += std::log(y[i]);
  }
  mean_lx /= static_cast<double>(n);
  mean_ly /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mean_lx;
    num += dx * (std::log(y[i]) - mean_ly);
    den += dx * dx;
  }
  return num / den;
}

namespace {

void require_sweep_coverage(const std::vector<SweepPointStats>& stats,
                            const std::string& name) {
  if (stats.size() < 2) {
    throw std::invalid_argument("insufficient data: " + name +
                                " sweep needs >= 2 points");
  }
  const double lo = static_cast<double>(stats.front().value);
  const double hi = static_cast<double>(stats.back().value);
  if (hi < 2.0 * lo) {
    throw std::invalid_argument("insufficient data: " + name +
                                " sweep must cover a 2x range");
  }
}

std::vector<double> values_of(const std::vector<SweepPointStats>& stats) {
  std::vector<double> out;
  for (const auto& s : stats) out.push_back(static_cast<double>(s.value));
  return out;
}

ScalingClaim slope_claim(const std::string& name,
                         const std::vector<double>& x,
                         const std::vector<double>& y, double lo, double hi) {
  ScalingClaim claim{name, fit_loglog_slope(x, y), lo, hi, false};
  claim.pass = claim.slope >= lo && claim.slope <= hi;
  return claim;
}

}  // namespace

ScalingVerdicts scaling_check(const ScalingInput& input) {
  ScalingVerdicts verdicts;
  bool any = false;

  if (!input.n_sweep.empty()) {
    require_sweep_coverage(input.n_sweep, "n");
    any = true;
    const auto x = values_of(input.n_sweep);
    std::vector<double> fast, base;
    for (const auto& s : input.n_sweep) {
      fast.push_back(s.fast_total_mean);
      base.push_back(s.baseline_total_mean);
    }
    verdicts.claims.push_back(
        slope_claim("fast total vs n", x, fast, 0.8, 1.3));
    verdicts.claims.push_back(
        slope_claim("baseline total vs n", x, base, 0.8, 1.3));
  }
  if (!input.d_sweep.empty()) {
    require_sweep_coverage(input.d_sweep, "d");
    any = true;
    const auto x = values_of(input.d_sweep);
    std::vector<double> round;
    for (const auto& s : input.d_sweep) round.push_back(s.fast_post_round_mean);
    verdicts.claims.push_back(
        slope_claim("fast post-init per-round vs d", x, round, -0.2, 0.3));
    ScalingClaim ratio{"fast post-init per-round max/min ratio over d",
                       round.back() / round.front(), 0.0, 1.3, false};
    ratio.pass = ratio.slope <= ratio.hi;
    verdicts.claims.push_back(ratio);
  }
  if (!input.m_sweep.empty()) {
    require_sweep_coverage(input.m_sweep, "m");
    any = true;
    const auto x = values_of(input.m_sweep);
    std::vector<double> fast, base;
    for (const auto& s : input.m_sweep) {
      fast.push_back(s.fast_total_mean);
      base.push_back(s.baseline_total_mean);
    }
    verdicts.claims.push_back(
        slope_claim("fast total vs m", x, fast, 0.7, 1.3));
    // m never enters the baseline; its flatness is reported, not gated.
    ScalingClaim flat = slope_claim("baseline total vs m", x, base, -0.3, 0.3);
    flat.informational = true;
    verdicts.claims.push_back(flat);
  }
  if (!input.k_sweep.empty()) {
    require_sweep_coverage(input.k_sweep, "k");
    any = true;
    const auto x = values_of(input.k_sweep);
    std::vector<double> fast, base;
    for (const auto& s : input.k_sweep) {
      fast.push_back(s.fast_total_mean);
      base.push_back(s.baseline_total_mean);
    }
    verdicts.claims.push_back(
        slope_claim("fast total vs k", x, fast, 1.6, 2.6));
    verdicts.claims.push_back(
        slope_claim("baseline total vs k", x, base, 1.6, 2.6));
  }
  if (!any) throw std::invalid_argument("insufficient data: no sweeps given");

  verdicts.all_pass =
      std::all_of(verdicts.claims.begin(), verdicts.claims.end(),
                  [](const ScalingClaim& c) {
                    return c.pass || c.informational;
                  });
  return verdicts;
}

ScalingInput run_scaling_sweeps(const ScalingSweepOptions& options) {
  const auto fixed = [](std::size_t n, std::size_t d, std::size_t m,
                        std::size_t k) {
    RunParams p;
    p.n = n;
    p.d = d;
    p.m = m;
    p.k = k;
    p.z_auto = true;
    p.sketch = SketchKind::kRademacher;  // cheap default for timing sweeps
    return p;
  };
  struct Panel {
    SweepParam param;
    std::vector<std::size_t> values;
    RunParams fixed;
  };
  std::vector<Panel> panels;
  if (options.quick) {
    panels = {{SweepParam::kN, {100, 200, 400}, fixed(0, 40, 16, 5)},
              {SweepParam::kD, {40, 80, 160}, fixed(300, 0, 16, 5)},
              {SweepParam::kM, {8, 16, 32}, fixed(300, 64, 0, 5)},
              {SweepParam::kK, {4, 8, 16}, fixed(300, 40, 16, 0)}};
  } else {
    panels = {{SweepParam::kN, {250, 500, 1000, 2000}, fixed(0, 100, 50, 10)},
              {SweepParam::kD, {100, 200, 400, 800}, fixed(1000, 0, 50, 10)},
              {SweepParam::kM, {25, 50, 100}, fixed(1000, 200, 0, 10)},
              {SweepParam::kK, {5, 10, 20}, fixed(1000, 100, 50, 0)}};
  }

  ScalingInput input;
  for (Panel& panel : panels) {
    if (options.verbose) {
      std::fprintf(stderr, "sweeping %s over %zu values ...\n",
                   to_string(panel.param).c_str(), panel.values.size());
    }
    SweepSpec spec;
    spec.varying = panel.param;
    spec.values = std::move(panel.values);
    spec.fixed = panel.fixed;
    spec.trials = options.trials;
    spec.base_seed = options.seed;
    SweepResult result = run_sweep(spec);
    if (!options.out_dir.empty()) {
      write_sweep_csv(result,
                      options.out_dir + "/sweep_" + to_string(panel.param) +
                          ".csv");
    }
    switch (panel.param) {
      case SweepParam::kN:
        input.n_sweep = std::move(result.stats);
        break;
      case SweepParam::kD:
        input.d_sweep = std::move(result.stats);
        break;
      case SweepParam::kM:
        input.m_sweep = std::move(result.stats);
        break;
      case SweepParam::kK:
        input.k_sweep = std::move(result.stats);
        break;
    }
  }
  return input;
}

std::string format_verdict_table(const ScalingVerdicts& verdicts) {
  std::ostringstream out;
  for (const ScalingClaim& claim : verdicts.claims) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-48s %8.3f  band [%.2f, %.2f]  %s%s\n",
                  claim.name.c_str(), claim.slope, claim.lo, claim.hi,
                  claim.pass ? "pass" : "FAIL",
                  claim.informational ? " (informational)" : "");
    out << buf;
  }
  out << (verdicts.all_pass ? "all scaling claims pass"
                            : "scaling claims FAILED")
      << '\n';
  return out.str();
}

QualityStats quality_check(const QualitySpec& spec) {
  GenSpec gen;
  gen.n = spec.n;
  gen.d = spec.d;
  gen.seed = derive_seeds(spec.seed).data;
  gen.distribution = Distribution::kGaussianMixture;
  gen.mixture = spec.mixture;
  const PointSet points = generate(gen);
  const PointSet means = mixture_centers(gen);

  QualityStats stats;
  stats.opt_proxy = cost_to_points(points, means);

  SplitMix64 sm(derive_seeds(spec.seed).fast_algo);
  std::vector<SeedingConfig> configs(spec.trials);
  for (SeedingConfig& cfg : configs) {
    cfg.k = spec.k;
    cfg.z_auto = true;
    cfg.sketch =
        SketchSpec{spec.epsilon, spec.delta, 2.0, spec.sketch, sm.next()};
    cfg.seed = sm.next();
  }

  stats.ratios.assign(spec.trials, 0.0);
  const auto run_trial = [&](std::size_t trial) {
    const SeedingResult run = fast_seeding(points, configs[trial]);
    const double cost = exact_cost(points, run.centers);
    // A zero cost is exact (every point coincides with a center); the
    // ratio is then zero regardless of the proxy.
    stats.ratios[trial] = cost == 0.0 ? 0.0 : cost / stats.opt_proxy;
  };
  if (spec.parallel && spec.trials > 1) {
    std::vector<std::thread> pool;
    const std::size_t workers =
        std::min<std::size_t>(spec.trials,
                              std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t; (t = next.fetch_add(1)) < spec.trials;) {
          run_trial(t);
        }
      });
    }
    for (auto& thread : pool) thread.join();
  } else {
    for (std::size_t trial = 0; trial < spec.trials; ++trial) run_trial(trial);
  }
  stats.mean_ratio = mean_of(stats.ratios);
  stats.max_ratio = *std::max_element(stats.ratios.begin(), stats.ratios.end());
  stats.hard_pass = stats.max_ratio <= 509.0;
  stats.soft_pass = stats.mean_ratio <= 2.0;
  return stats;
}

}  // namespace sketchseed
