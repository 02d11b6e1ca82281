#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sketchseed/numeric.hpp"
#include "sketchseed/point_set.hpp"
#include "sketchseed/rng.hpp"
#include "support/brute_force.hpp"

using namespace sketchseed;

namespace {

PointSet make_points(std::size_t d, const std::vector<std::vector<double>>& rows) {
  std::vector<double> coords;
  for (const auto& row : rows) {
    REQUIRE(row.size() == d);
    coords.insert(coords.end(), row.begin(), row.end());
  }
  return PointSet::from_coords(rows.size(), d, std::move(coords));
}

PointSet random_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  std::vector<double> coords(n * d);
  for (auto& c : coords) c = uniform_range(rng, -3, 3);
  return PointSet::from_coords(n, d, std::move(coords));
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("exact_cost on hand-checked instances") {
  const PointSet line = make_points(1, {{0.0}, {1.0}, {3.0}});
  CHECK(exact_cost(line, CenterSelection({0})) == 10.0);
  CHECK(exact_cost(line, CenterSelection({0, 1, 2})) == 0.0);
  CHECK_THROWS_WITH_AS(exact_cost(line, CenterSelection{}), "no centers",
                       std::invalid_argument);
}

TEST_CASE("exact_cost equals the brute-force double loop") {
  const PointSet points = random_points(16, 4, 99);
  Xoshiro256pp rng(100);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::size_t> centers;
    while (centers.size() < 3) {
      const auto j = static_cast<std::size_t>(uniform_index(rng, points.n));
      if (std::find(centers.begin(), centers.end(), j) == centers.end()) {
        centers.push_back(j);
      }
    }
    const double got = exact_cost(points, CenterSelection(centers));
    const double want = brute::cost(points, centers);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("exact_cost is permutation-invariant and monotone in the centers") {
  const PointSet points = random_points(24, 3, 7);
  Xoshiro256pp rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::size_t> centers;
    for (std::size_t j = 0; j < points.n; ++j) {
      if (uniform_unit(rng) < 0.25) centers.push_back(j);
    }
    if (centers.size() < 2) continue;
    const double base = exact_cost(points, CenterSelection(centers));

    std::vector<std::size_t> shuffled = centers;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[uniform_index(rng, i)]);
    }
    CHECK(exact_cost(points, CenterSelection(shuffled)) == base);

    // adding any center never raises the cost
    for (std::size_t extra = 0; extra < points.n; ++extra) {
      if (std::find(centers.begin(), centers.end(), extra) != centers.end()) {
        continue;
      }
      std::vector<std::size_t> bigger = centers;
      bigger.push_back(extra);
      CHECK(exact_cost(points, CenterSelection(bigger)) <= base);
      break;
    }
  }
}

TEST_CASE("exact_cost is zero exactly when every point sits on a center") {
  const PointSet points = make_points(2, {{0, 0}, {1, 1}, {0, 0}, {2, 2}});
  CHECK(exact_cost(points, CenterSelection({0, 1, 3})) == 0.0);  // row 2 == row 0
  CHECK(exact_cost(points, CenterSelection({0, 1})) > 0.0);
}

TEST_CASE("cost_to_points matches the augmented-selection trick") {
  // Appending the centers as points and selecting them leaves the total
  // unchanged (each appended row contributes zero), which gives an
  // independent route to the same value.
  const PointSet points = random_points(20, 3, 55);
  const PointSet centers = random_points(4, 3, 56);
  std::vector<double> augmented = points.coords;
  augmented.insert(augmented.end(), centers.coords.begin(),
                   centers.coords.end());
  const PointSet joint =
      PointSet::from_coords(points.n + centers.n, 3, std::move(augmented));
  std::vector<std::size_t> selection;
  for (std::size_t c = 0; c < centers.n; ++c) selection.push_back(points.n + c);
  const double via_selection = exact_cost(joint, CenterSelection(selection));
  CHECK(cost_to_points(points, centers) ==
        doctest::Approx(via_selection).epsilon(1e-12));
}

TEST_CASE("subset_mean basics and the compensated-summation reference") {
  const PointSet points = make_points(2, {{0, 0}, {2, 2}, {5, -1}});
  const std::vector<std::size_t> single{2};
  CHECK(subset_mean(points, single) == std::vector<double>{5.0, -1.0});
  const std::vector<std::size_t> pair{0, 1};
  CHECK(subset_mean(points, pair) == std::vector<double>{1.0, 1.0});
  CHECK_THROWS_AS(subset_mean(points, {}), std::invalid_argument);

  const PointSet big = random_points(200, 5, 12);
  Xoshiro256pp rng(13);
  std::vector<std::size_t> subset;
  for (std::size_t i = 0; i < 10; ++i) {
    subset.push_back(uniform_index(rng, big.n));
  }
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  const auto mean = subset_mean(big, subset);
  for (std::size_t t = 0; t < big.d; ++t) {
    std::vector<double> column;
    for (std::size_t s : subset) column.push_back(big.row(s)[t]);
    const double want = brute::kahan_sum(column) / double(subset.size());
    CHECK(mean[t] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("cost decomposition residual vanishes where it must") {
  const PointSet points = random_points(30, 4, 21);
  std::vector<std::size_t> subset{1, 4, 9, 16, 25};

  SUBCASE("center at the mean") {
    const auto mu = subset_mean(points, subset);
    CHECK(cost_decomposition_residual(points, subset, mu) <= 1e-12);
  }
  SUBCASE("single point, arbitrary center") {
    const std::vector<std::size_t> one{7};
    const std::vector<double> c{3.0, -1.0, 0.5, 2.0};
    CHECK(cost_decomposition_residual(points, one, c) <= 1e-12);
  }
  SUBCASE("random draws stay within 1e-9 relative") {
    Xoshiro256pp rng(4);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::size_t> sub;
      for (std::size_t i = 0; i < points.n; ++i) {
        if (uniform_unit(rng) < 0.3) sub.push_back(i);
      }
      if (sub.empty()) sub.push_back(0);
      std::vector<double> c(points.d);
      for (auto& v : c) v = uniform_range(rng, -5, 5);
      const double residual = cost_decomposition_residual(points, sub, c);
      std::vector<double> dists;
      for (std::size_t s : sub) {
        dists.push_back(brute::sq_dist(points.row(s), c));
      }
      const double scale = std::max(1.0, brute::kahan_sum(dists));
      CHECK(residual <= 1e-9 * scale);
    }
  }
}

TEST_CASE("unit-sphere generation is deterministic and normalized") {
  GenSpec spec;
  spec.n = 5;
  spec.d = 3;
  spec.seed = 42;
  const PointSet a = generate(spec);
  const PointSet b = generate(spec);
  CHECK(a.coords == b.coords);

  GenSpec big = spec;
  big.n = 200;
  big.d = 17;
  const PointSet points = generate(big);
  for (std::size_t i = 0; i < points.n; ++i) {
    double norm_sq = 0.0;
    for (double v : points.row(i)) norm_sq += v * v;
    CHECK(std::abs(std::sqrt(norm_sq) - 1.0) <= 1e-12);
  }

  GenSpec primary = spec;
  primary.n = 150;
  primary.d = 150;
  CHECK(generate(primary).n == 150);

  GenSpec bad = spec;
  bad.n = 0;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
  bad.n = 5;
  bad.d = 0;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
}

TEST_CASE("mixture generation scatters around recoverable means") {
  GenSpec spec;
  spec.n = 400;
  spec.d = 10;
  spec.seed = 77;
  spec.distribution = Distribution::kGaussianMixture;
  spec.mixture = {4, 10.0, 0.5};
  const PointSet points = generate(spec);
  const PointSet means = mixture_centers(spec);
  CHECK(means.n == 4);
  // every point lands near its round-robin component
  for (std::size_t i = 0; i < points.n; ++i) {
    const double dd = brute::sq_dist(points.row(i), means.row(i % 4));
    CHECK(dd < 25.0);  // ~sigma^2 * d = 2.5 expected, generous headroom
  }
  CHECK(generate(spec).coords == points.coords);

  GenSpec bad = spec;
  bad.mixture.components = 11;  // exceeds d
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
}

TEST_CASE("dataset files round-trip bitwise") {
  const PointSet points = random_points(12, 5, 31);
  const std::string path = temp_path("sketchseed_roundtrip.txt");
  save_points(points, path);
  const PointSet loaded = load_points(path);
  CHECK(loaded.n == points.n);
  CHECK(loaded.d == points.d);
  CHECK(loaded.coords == points.coords);
  std::remove(path.c_str());
}

TEST_CASE("dataset parser reports malformed input with line numbers") {
  const std::string path = temp_path("sketchseed_parse.txt");

  SUBCASE("documented 3x2 example") {
    std::ofstream(path) << "3 2\n0,0\n1,0\n0,1\n";
    const PointSet p = load_points(path);
    CHECK(p.n == 3);
    CHECK(p.d == 2);
    CHECK(p.row(2)[1] == 1.0);
  }
  SUBCASE("NaN token names the row") {
    std::ofstream(path) << "2 2\n0,0\n1,NaN\n";
    CHECK_THROWS_WITH_AS(load_points(path),
                         doctest::Contains("line 3"), std::runtime_error);
  }
  SUBCASE("row length mismatch") {
    std::ofstream(path) << "2 2\n0,0,5\n1,1\n";
    CHECK_THROWS_WITH_AS(load_points(path),
                         doctest::Contains("expected 2 values, got 3"),
                         std::runtime_error);
  }
  SUBCASE("bad header") {
    std::ofstream(path) << "two 2\n";
    CHECK_THROWS_AS(load_points(path), std::runtime_error);
  }
  SUBCASE("truncated body") {
    std::ofstream(path) << "3 1\n0\n1\n";
    CHECK_THROWS_WITH_AS(load_points(path),
                         doctest::Contains("unexpected end of file"),
                         std::runtime_error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_points(temp_path("sketchseed_does_not_exist.txt")),
                    std::runtime_error);
  }
  std::remove(path.c_str());
}

TEST_CASE("center selection enforces distinctness and range") {
  CenterSelection c({3, 1, 2});
  CHECK_THROWS_AS(c.add(1), std::invalid_argument);
  c.add(5);
  CHECK(c.sorted() == std::vector<std::size_t>{1, 2, 3, 5});
  c.replace(3, 7);
  CHECK(c.contains(7));
  CHECK(!c.contains(3));
  CHECK_THROWS_AS(c.replace(3, 8), std::invalid_argument);
  CHECK_THROWS_AS(c.replace(1, 7), std::invalid_argument);
  CHECK_THROWS_AS(CenterSelection({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(c.validate_range(4), std::invalid_argument);
}
