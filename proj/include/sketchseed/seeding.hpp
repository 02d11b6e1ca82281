#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sketchseed/distance_oracle.hpp"
#include "sketchseed/point_set.hpp"
#include "sketchseed/rng.hpp"
#include "sketchseed/sketch.hpp"

namespace sketchseed {

struct SeedingConfig {
  std::size_t k = 1;
  std::size_t z = 0;         // local-search rounds when z_auto is false
  bool z_auto = false;       // z = ceil(z_constant * k * max(1, ln ln max(k, 3)))
  double z_constant = 100.0;
  SketchSpec sketch{};
  std::uint64_t seed = 0;       // algorithm stream; sketch has its own seed
  std::size_t m_override = 0;   // 0 = sketch dimension formula
  bool exact_eval = false;      // record exact cost per round (slow)
};

std::size_t resolve_rounds(const SeedingConfig& cfg);

enum class Phase { kSeedUniform, kD2Round, kLocalSearchRound };

struct TrajectoryRecord {
  Phase phase;
  double cost;                       // as seen by the algorithm
  std::optional<double> exact_cost;  // present when exact_eval is on
  double duration_ms = 0.0;
};

struct CostTrajectory {
  std::vector<TrajectoryRecord> records;
};

struct LocalSearchOutcome {
  bool swapped = false;
  std::size_t candidate = 0;  // the sampled point a
  std::size_t removed = 0;    // the replaced center q (when swapped)
  double cost_after = 0.0;
};

struct SeedingResult {
  CenterSelection centers;
  CostTrajectory trajectory;
  std::vector<std::size_t> sampled;  // every sampled index, in draw order
  std::vector<std::pair<std::size_t, std::size_t>> swaps;  // (a, q)
  std::size_t resolved_m = 0;  // sketch dimension used (0 for the baseline)
  std::size_t resolved_z = 0;
  double init_ms = 0.0;   // oracle construction (0 for the baseline)
  double total_ms = 0.0;
};

// One swap round: sample a candidate by D^2, scan every current center
// for the best replacement, swap when the configuration cost strictly
// drops; otherwise the oracle and the selection are left untouched.
// A candidate that is already a center (reachable only through the
// zero-weight sampling fallback) is a forced no-op. Requires |C| >= 2 and
// that `centers` mirrors the oracle's center set.
LocalSearchOutcome local_search_step(DistanceOracle& oracle,
                                     CenterSelection& centers,
                                     Xoshiro256pp& rng);

// Sketch-accelerated seeding: uniform first center, k-1 D^2 rounds, then
// Z local-search rounds, all against the distance oracle.
SeedingResult fast_seeding(const PointSet& points, const SeedingConfig& cfg);

// Same control flow and random-stream consumption with every distance
// computed exactly in full dimension and nothing cached across rounds.
// Timing baseline and exactness reference; ignores cfg.sketch.
SeedingResult baseline_seeding(const PointSet& points,
                               const SeedingConfig& cfg);

// Exhaustive reference for one swap round: evaluates the exact cost of
// (C \ {b}) + {a} for every center b and returns the argmin (ties toward
// the smaller index) with its cost.
std::pair<std::size_t, double> brute_force_best_swap(
    const PointSet& points, const CenterSelection& centers, std::size_t a);

}  // namespace sketchseed
