#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sketchseed/point_set.hpp"

namespace sketchseed {

enum class SketchKind { kGaussian, kRademacher, kIdentity };

std::string to_string(SketchKind kind);
SketchKind sketch_kind_from_string(const std::string& name);

struct SketchSpec {
  double epsilon = 0.05;  // target relative distance distortion
  double delta = 0.01;    // failure probability budget
  double c_m = 2.0;       // constant in the dimension formula, >= 1
  SketchKind kind = SketchKind::kGaussian;
  std::uint64_t seed = 0;
};

// Throws unless epsilon, delta lie in (0, 1) and c_m >= 1. The identity
// kind ignores epsilon/delta entirely.
void validate_sketch_spec(const SketchSpec& spec);

// Sketch dimension: min(d, ceil(c_m * epsilon^-2 * ln(n/delta))) for the
// random kinds, d for identity. Never exceeds d.
std::size_t jl_dimension(std::size_t n, std::size_t d, const SketchSpec& spec);

// Projected copies of the points, one shared projection for the whole
// set.
struct SketchedSet {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> rows;  // n * m
  SketchSpec spec{};

  std::span<const double> row(std::size_t i) const {
    return {rows.data() + i * m, m};
  }
  const double* row_data(std::size_t i) const { return rows.data() + i * m; }
};

// Draws one m x d projection from the spec's distribution (gaussian:
// i.i.d. N(0, 1/m); rademacher: +-1/sqrt(m)) and applies it to every
// point. forced_m overrides the formula when nonzero (still capped at d).
// Identity copies the rows and sets m = d. Deterministic given the seed;
// may parallelize over points (see SKETCHSEED_THREADS).
SketchedSet project(const PointSet& points, const SketchSpec& spec,
                    std::size_t forced_m = 0);

// Squared distance between sketched rows i and j, O(m).
double sketch_sq_dist(const SketchedSet& sketched, std::size_t i,
                      std::size_t j);

}  // namespace sketchseed
