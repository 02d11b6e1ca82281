#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "sketchseed/distance_oracle.hpp"
#include "sketchseed/point_set.hpp"
#include "sketchseed/rng.hpp"
#include "sketchseed/seeding.hpp"
#include "support/brute_force.hpp"

using namespace sketchseed;

namespace {

const SketchSpec kIdentity{0.1, 0.01, 2.0, SketchKind::kIdentity, 0};

PointSet random_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  std::vector<double> coords(n * d);
  for (auto& c : coords) c = uniform_range(rng, -2, 2);
  return PointSet::from_coords(n, d, std::move(coords));
}

PointSet line_points(const std::vector<double>& xs) {
  std::vector<double> coords(xs);
  return PointSet::from_coords(xs.size(), 1, std::move(coords));
}

SeedingConfig identity_config(std::size_t k, std::size_t z,
                              std::uint64_t seed) {
  SeedingConfig cfg;
  cfg.k = k;
  cfg.z = z;
  cfg.sketch = kIdentity;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("round formula clamps below and grows with k") {
  SeedingConfig cfg;
  cfg.z_auto = true;
  cfg.z_constant = 100.0;
  for (std::size_t k : {1u, 2u, 3u}) {
    cfg.k = k;
    CHECK(resolve_rounds(cfg) == 100 * k);  // ln ln max(k,3) < 1 -> clamp
  }
  cfg.k = 15;
  CHECK(resolve_rounds(cfg) == 1500);
  cfg.k = 20;
  CHECK(resolve_rounds(cfg) == 2195);  // ceil(2000 * ln ln 20)
  cfg.z_auto = false;
  cfg.z = 7;
  CHECK(resolve_rounds(cfg) == 7);
}

TEST_CASE("local search swaps exactly like the enumerated best swap") {
  // centers {0, 1} on the line {0, 1, 10, 11}: the candidate is always one
  // of the far points, either swap costs 2, the tie resolves to index 0.
  const PointSet points = line_points({0.0, 1.0, 10.0, 11.0});
  CenterSelection centers({0, 1});
  DistanceOracle oracle(points, kIdentity,
                        std::vector<std::size_t>{0, 1});
  Xoshiro256pp rng(3);
  const LocalSearchOutcome out = local_search_step(oracle, centers, rng);
  REQUIRE(out.swapped);
  CHECK((out.candidate == 2 || out.candidate == 3));
  CHECK(out.removed == 0);
  CHECK(out.cost_after == 2.0);
  const auto [q, best] = brute_force_best_swap(points, CenterSelection({0, 1}),
                                               out.candidate);
  CHECK(q == 0);
  CHECK(best == 2.0);
  CHECK(centers.contains(out.candidate));
  CHECK(!centers.contains(0));
}

TEST_CASE("a covered instance never swaps and the state is untouched") {
  // Every value appears twice; selecting one copy of each value gives cost
  // zero, so no swap can strictly improve.
  const PointSet points = line_points({0.0, 0.0, 5.0, 5.0});
  CenterSelection centers({0, 2});
  DistanceOracle oracle(points, kIdentity, std::vector<std::size_t>{0, 2});
  Xoshiro256pp rng(4);
  for (int round = 0; round < 10; ++round) {
    const LocalSearchOutcome out = local_search_step(oracle, centers, rng);
    CHECK(!out.swapped);
    CHECK(out.cost_after == 0.0);
  }
  CHECK(centers.sorted() == std::vector<std::size_t>{0, 2});
  CHECK(oracle.centers() == std::vector<std::size_t>{0, 2});
}

TEST_CASE("swap choices match the brute force on random instances") {
  Xoshiro256pp rng(5);
  int swaps_seen = 0;
  for (int instance = 0; instance < 30; ++instance) {
    const std::size_t n = 8 + uniform_index(rng, 13);  // <= 20
    const std::size_t d = 1 + uniform_index(rng, 5);
    const std::size_t k = 2 + uniform_index(rng, 2);
    const PointSet points = random_points(n, d, 700 + instance);
    std::vector<std::size_t> initial;
    while (initial.size() < k) {
      const auto j = uniform_index(rng, n);
      if (std::find(initial.begin(), initial.end(), j) == initial.end()) {
        initial.push_back(j);
      }
    }
    CenterSelection centers(initial);
    DistanceOracle oracle(points, kIdentity, initial);
    for (int round = 0; round < 8; ++round) {
      const CenterSelection before = centers;
      const double cost_before = exact_cost(points, before);
      const LocalSearchOutcome out = local_search_step(oracle, centers, rng);
      const double cost_after = exact_cost(points, centers);
      CHECK(cost_after <= cost_before);
      CHECK(out.cost_after == doctest::Approx(cost_after).epsilon(1e-12));
      if (out.swapped) {
        ++swaps_seen;
        const auto [q, best] =
            brute_force_best_swap(points, before, out.candidate);
        CHECK(out.removed == q);
        CHECK(out.cost_after == doctest::Approx(best).epsilon(1e-12));
      }
      // selection and oracle stay mirrored
      CHECK(centers.sorted() == oracle.centers());
    }
  }
  CHECK(swaps_seen > 0);
}

TEST_CASE("brute_force_best_swap handles a candidate already selected") {
  const PointSet points = random_points(10, 2, 6);
  const CenterSelection centers({1, 4, 7});
  const auto [q, best] = brute_force_best_swap(points, centers, 4);
  CHECK(best == doctest::Approx(exact_cost(points, centers)).epsilon(1e-12));
  (void)q;
}

TEST_CASE("fast seeding covers the degenerate corners") {
  SUBCASE("k equals n drives the cost to zero and local search idles") {
    const PointSet points = random_points(7, 2, 7);
    SeedingConfig cfg = identity_config(7, 25, 11);
    const SeedingResult result = fast_seeding(points, cfg);
    CHECK(result.centers.size() == 7);
    CHECK(result.trajectory.records.back().cost == 0.0);
    CHECK(result.swaps.empty());
    CHECK(exact_cost(points, result.centers) == 0.0);
  }
  SUBCASE("k = 1, z = 0 draws the first center uniformly") {
    const PointSet points = random_points(5, 2, 8);
    std::vector<int> counts(5, 0);
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
      SeedingConfig cfg = identity_config(1, 0, seed);
      const SeedingResult result = fast_seeding(points, cfg);
      ++counts[result.centers.indices()[0]];
    }
    // each index within 1/n +- 3 sigma
    const double p = 0.2, sigma = std::sqrt(p * (1 - p) / 10000.0);
    for (int c : counts) {
      CHECK(std::abs(c / 10000.0 - p) <= 3 * sigma + 1e-9);
    }
  }
  SUBCASE("k = 1 with z > 0 skips local search instead of erasing the last center") {
    const PointSet points = random_points(5, 2, 9);
    SeedingConfig cfg = identity_config(1, 50, 3);
    const SeedingResult result = fast_seeding(points, cfg);
    CHECK(result.centers.size() == 1);
    CHECK(result.trajectory.records.size() == 1);
  }
  SUBCASE("invalid k") {
    const PointSet points = random_points(5, 2, 10);
    CHECK_THROWS_AS(fast_seeding(points, identity_config(0, 0, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(fast_seeding(points, identity_config(6, 0, 1)),
                    std::invalid_argument);
  }
}

TEST_CASE("runs are reproducible from the seed") {
  const PointSet points = random_points(40, 6, 12);
  SeedingConfig cfg = identity_config(5, 30, 99);
  const SeedingResult a = fast_seeding(points, cfg);
  const SeedingResult b = fast_seeding(points, cfg);
  CHECK(a.sampled == b.sampled);
  CHECK(a.swaps == b.swaps);
  CHECK(std::equal(a.centers.indices().begin(), a.centers.indices().end(),
                   b.centers.indices().begin(), b.centers.indices().end()));
  REQUIRE(a.trajectory.records.size() == b.trajectory.records.size());
  for (std::size_t i = 0; i < a.trajectory.records.size(); ++i) {
    CHECK(a.trajectory.records[i].cost == b.trajectory.records[i].cost);
  }
}

TEST_CASE("identity-sketch fast run replays the exact baseline bitwise") {
  for (std::uint64_t seed : {1ull, 7ull, 23ull, 40404ull}) {
    const PointSet points = random_points(35, 5, seed * 3 + 1);
    SeedingConfig cfg = identity_config(4, 40, seed);
    const SeedingResult fast = fast_seeding(points, cfg);
    const SeedingResult base = baseline_seeding(points, cfg);
    CHECK(fast.sampled == base.sampled);
    CHECK(fast.swaps == base.swaps);
    CHECK(std::equal(fast.centers.indices().begin(),
                     fast.centers.indices().end(),
                     base.centers.indices().begin(),
                     base.centers.indices().end()));
    REQUIRE(fast.trajectory.records.size() == base.trajectory.records.size());
    for (std::size_t i = 0; i < fast.trajectory.records.size(); ++i) {
      CHECK(fast.trajectory.records[i].cost ==
            base.trajectory.records[i].cost);
    }
  }
}

TEST_CASE("baseline seeding stands alone on the degenerate corner") {
  const PointSet points = random_points(6, 2, 14);
  SeedingConfig cfg = identity_config(6, 10, 2);
  const SeedingResult result = baseline_seeding(points, cfg);
  CHECK(result.centers.size() == 6);
  CHECK(exact_cost(points, result.centers) == 0.0);
}

TEST_CASE("exact per-round evaluation lands in the trajectory") {
  const PointSet points = random_points(20, 3, 15);
  SeedingConfig cfg = identity_config(3, 5, 4);
  cfg.exact_eval = true;
  const SeedingResult result = fast_seeding(points, cfg);
  for (const TrajectoryRecord& rec : result.trajectory.records) {
    REQUIRE(rec.exact_cost.has_value());
    // identity sketch: the oracle view is the exact view
    CHECK(rec.cost == doctest::Approx(*rec.exact_cost).epsilon(1e-12));
  }
}

TEST_CASE("mixture instances end well below the quality bound") {
  GenSpec gen;
  gen.n = 200;
  gen.d = 20;
  gen.seed = 5;
  gen.distribution = Distribution::kGaussianMixture;
  gen.mixture = {4, 10.0, 1.0};
  const PointSet points = generate(gen);
  const PointSet means = mixture_centers(gen);
  const double proxy = cost_to_points(points, means);
  REQUIRE(proxy > 0.0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SeedingConfig cfg;
    cfg.k = 4;
    cfg.z_auto = true;
    cfg.sketch = SketchSpec{0.2, 0.05, 2.0, SketchKind::kGaussian, seed + 100};
    cfg.seed = seed;
    const SeedingResult result = fast_seeding(points, cfg);
    const double ratio = exact_cost(points, result.centers) / proxy;
    CHECK(ratio <= 509.0);
    CHECK(ratio < 5.0);  // far tighter in practice on separated mixtures
  }
}
