#include "sketchseed/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sketchseed/numeric.hpp"
#include "sketchseed/timing.hpp"

namespace sketchseed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

std::size_t resolve_rounds(const SeedingConfig& cfg) {
  if (!cfg.z_auto) return cfg.z;
  // ln ln k is clamped below at 1 (and its argument at 3) so small k
  // still gets a positive round count.
  const double kk = static_cast<double>(std::max<std::size_t>(cfg.k, 3));
  const double rounds = cfg.z_constant * static_cast<double>(cfg.k) *
                        std::max(1.0, std::log(std::log(kk)));
  return static_cast<std::size_t>(std::ceil(rounds));
}

LocalSearchOutcome local_search_step(DistanceOracle& oracle,
                                     CenterSelection& centers,
                                     Xoshiro256pp& rng) {
  if (centers.size() < 2) {
    throw std::invalid_argument("local search needs at least 2 centers");
  }
  LocalSearchOutcome out;
  out.candidate = oracle.sample(rng);
  if (centers.contains(out.candidate)) {
    out.cost_after = oracle.cached_cost();
    return out;
  }
  double incumbent = oracle.cost();
  std::size_t best_removal = kNone;
  // Ascending scan with a strict comparison: a tie resolves to the
  // smallest removal index.
  for (std::size_t b : centers.sorted()) {
    oracle.erase(b);
    const double with_candidate = oracle.query(out.candidate);
    if (with_candidate < incumbent) {
      best_removal = b;
      incumbent = with_candidate;
    }
    oracle.insert(b);
  }
  if (best_removal != kNone) {
    oracle.erase(best_removal);
    oracle.insert(out.candidate);
    centers.replace(best_removal, out.candidate);
    out.swapped = true;
    out.removed = best_removal;
  }
  out.cost_after = oracle.cached_cost();
  return out;
}

namespace {

// Per-point nearest/second-nearest center bookkeeping for the exact
// baseline, rebuilt from scratch every time it is needed.
struct ExactScan {
  std::vector<double> min1;
  std::vector<std::uint32_t> arg1;
  std::vector<double> min2;
  std::vector<double> candidate;

  void compute(const PointSet& points,
               std::span<const std::size_t> sorted_centers) {
    const std::size_t n = points.n;
    min1.assign(n, kInf);
    arg1.assign(n, 0xffffffffu);
    min2.assign(n, kInf);
    for (std::size_t i = 0; i < n; ++i) {
      const double* xi = points.row_data(i);
      double best = kInf, second = kInf;
      std::uint32_t best_center = 0xffffffffu;
      for (std::size_t c : sorted_centers) {
        const double dd = sq_dist(xi, points.row_data(c), points.d);
        const auto cc = static_cast<std::uint32_t>(c);
        if (dd < best || (dd == best && cc < best_center)) {
          second = best;
          best = dd;
          best_center = cc;
        } else if (dd < second) {
          second = dd;
        }
      }
      min1[i] = best;
      arg1[i] = best_center;
      min2[i] = second;
    }
  }

  double cost(std::size_t n) const {
    return pairwise_transform_sum(std::size_t{0}, n,
                                  [&](std::size_t i) { return min1[i]; });
  }
};

// The two seeding variants share one driver so they consume the random
// stream identically; only the cost machinery differs.

struct FastEngine {
  const PointSet& points;
  const SeedingConfig& cfg;
  std::optional<DistanceOracle> oracle;

  void init(SeedingResult& result) {
    Stopwatch timer;
    oracle.emplace(points, cfg.sketch, std::span<const std::size_t>{},
                   cfg.m_override, cfg.k);
    result.init_ms = timer.elapsed_ms();
    result.resolved_m = oracle->sketch().m;
  }
  void insert(std::size_t j, const CenterSelection&) { oracle->insert(j); }
  std::size_t sample(const CenterSelection&, Xoshiro256pp& rng) {
    return oracle->sample(rng);
  }
  double current_cost(const CenterSelection&) { return oracle->cached_cost(); }
  LocalSearchOutcome search_step(CenterSelection& centers, Xoshiro256pp& rng) {
    return local_search_step(*oracle, centers, rng);
  }
};

struct ExactEngine {
  const PointSet& points;
  ExactScan scan;

  void init(SeedingResult&) {}

  void insert(std::size_t, const CenterSelection&) {}

  std::size_t sample(const CenterSelection& centers, Xoshiro256pp& rng) {
    scan.compute(points, centers.sorted());
    return d2_sample_index(
        std::span<const double>(scan.min1),
        [&](std::size_t i) { return centers.contains(i); }, centers.size(),
        rng);
  }

  double current_cost(const CenterSelection& centers) {
    scan.compute(points, centers.sorted());
    return scan.cost(points.n);
  }

  LocalSearchOutcome search_step(CenterSelection& centers, Xoshiro256pp& rng) {
    const std::size_t n = points.n;
    LocalSearchOutcome out;
    const auto sorted = centers.sorted();
    scan.compute(points, sorted);
    out.candidate = d2_sample_index(
        std::span<const double>(scan.min1),
        [&](std::size_t i) { return centers.contains(i); }, centers.size(),
        rng);
    double incumbent = scan.cost(n);
    if (centers.contains(out.candidate)) {
      out.cost_after = incumbent;
      return out;
    }
    scan.candidate.resize(n);
    const double* xa = points.row_data(out.candidate);
    for (std::size_t i = 0; i < n; ++i) {
      scan.candidate[i] = sq_dist(points.row_data(i), xa, points.d);
    }
    std::size_t best_removal = kNone;
    for (std::size_t b : sorted) {
      const auto bb = static_cast<std::uint32_t>(b);
      const double with_candidate =
          pairwise_transform_sum(std::size_t{0}, n, [&](std::size_t i) {
            const double base = scan.arg1[i] == bb ? scan.min2[i] : scan.min1[i];
            return std::min(base, scan.candidate[i]);
          });
      if (with_candidate < incumbent) {
        best_removal = b;
        incumbent = with_candidate;
      }
    }
    if (best_removal != kNone) {
      centers.replace(best_removal, out.candidate);
      out.swapped = true;
      out.removed = best_removal;
    }
    out.cost_after = incumbent;
    return out;
  }
};

template <class Engine>
SeedingResult run_seeding(const PointSet& points, const SeedingConfig& cfg,
                          Engine&& engine) {
  if (cfg.k == 0) throw std::invalid_argument("k must be at least 1");
  if (cfg.k > points.n) throw std::invalid_argument("k must not exceed n");

  SeedingResult result;
  result.resolved_z = resolve_rounds(cfg);
  Xoshiro256pp rng(cfg.seed);
  Stopwatch total;

  engine.init(result);

  const auto record = [&](Phase phase, double cost, const Stopwatch& timer) {
    TrajectoryRecord rec{phase, cost, std::nullopt, timer.elapsed_ms()};
    if (cfg.exact_eval) rec.exact_cost = exact_cost(points, result.centers);
    result.trajectory.records.push_back(rec);
  };

  {
    Stopwatch round;
    const auto first = static_cast<std::size_t>(uniform_index(rng, points.n));
    result.sampled.push_back(first);
    result.centers.add(first);
    engine.insert(first, result.centers);
    record(Phase::kSeedUniform, engine.current_cost(result.centers), round);
  }

  for (std::size_t i = 1; i < cfg.k; ++i) {
    Stopwatch round;
    std::size_t j = engine.sample(result.centers, rng);
    if (result.centers.contains(j)) {
      // Reachable only through the zero-weight fallback; redraw uniformly
      // among non-centers so the selection still reaches size k.
      j = uniform_nonmember_index(
          points.n, [&](std::size_t p) { return result.centers.contains(p); },
          result.centers.size(), rng);
    }
    result.sampled.push_back(j);
    result.centers.add(j);
    engine.insert(j, result.centers);
    record(Phase::kD2Round, engine.current_cost(result.centers), round);
  }

  if (cfg.k >= 2) {
    for (std::size_t r = 0; r < result.resolved_z; ++r) {
      Stopwatch round;
      const LocalSearchOutcome out = engine.search_step(result.centers, rng);
      result.sampled.push_back(out.candidate);
      if (out.swapped) result.swaps.emplace_back(out.candidate, out.removed);
      record(Phase::kLocalSearchRound, out.cost_after, round);
    }
  }

  result.total_ms = total.elapsed_ms();
  return result;
}

}  // namespace

SeedingResult fast_seeding(const PointSet& points, const SeedingConfig& cfg) {
  return run_seeding(points, cfg, FastEngine{points, cfg, std::nullopt});
}

SeedingResult baseline_seeding(const PointSet& points,
                               const SeedingConfig& cfg) {
  return run_seeding(points, cfg, ExactEngine{points, {}});
}

std::pair<std::size_t, double> brute_force_best_swap(
    const PointSet& points, const CenterSelection& centers, std::size_t a) {
  if (centers.size() < 2) {
    throw std::invalid_argument("best-swap scan needs at least 2 centers");
  }
  if (a >= points.n) throw std::out_of_range("candidate index out of range");
  std::size_t best_removal = kNone;
  double best_cost = kInf;
  for (std::size_t b : centers.sorted()) {
    std::vector<std::size_t> swapped;
    swapped.reserve(centers.size());
    for (std::size_t c : centers.indices()) {
      if (c != b) swapped.push_back(c);
    }
    if (std::find(swapped.begin(), swapped.end(), a) == swapped.end()) {
      swapped.push_back(a);
    }
    const double cost = exact_cost(points, CenterSelection(swapped));
    if (cost < best_cost) {
      best_cost = cost;
      best_removal = b;
    }
  }
  return {best_removal, best_cost};
}

}  // namespace sketchseed
