#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sketchseed {

// Dense row-major point matrix. Immutable once built; safe for concurrent
// reads.
struct PointSet {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> coords;  // n * d, row per point

  PointSet() = default;
  PointSet(std::size_t n_points, std::size_t dim);

  // Validates the shape and that every coordinate is finite.
  static PointSet from_coords(std::size_t n_points, std::size_t dim,
                              std::vector<double> coords);

  std::span<const double> row(std::size_t i) const {
    return {coords.data() + i * d, d};
  }
  const double* row_data(std::size_t i) const { return coords.data() + i * d; }
  double* row_data(std::size_t i) { return coords.data() + i * d; }
};

// Ordered list of distinct point indices; order is insertion order (the
// first entry is the uniformly drawn seed center).
class CenterSelection {
 public:
  CenterSelection() = default;
  explicit CenterSelection(std::vector<std::size_t> indices);

  void add(std::size_t index);  // rejects duplicates
  // Replaces old_index with new_index in place; rejects a missing
  // old_index and a new_index already present (unless equal).
  void replace(std::size_t old_index, std::size_t new_index);
  bool contains(std::size_t index) const;

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  std::span<const std::size_t> indices() const { return indices_; }
  std::vector<std::size_t> sorted() const;
  void validate_range(std::size_t n) const;  // every index < n

 private:
  std::vector<std::size_t> indices_;
};

enum class Distribution { kUnitSphere, kGaussianMixture };

struct MixtureParams {
  std::size_t components = 1;
  double separation = 10.0;  // axis offset of each component mean, in sigmas
  double sigma = 1.0;
};

struct GenSpec {
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  Distribution distribution = Distribution::kUnitSphere;
  MixtureParams mixture{};
};

// Sum over all points of the squared distance to the nearest selected
// center, computed in full dimension. Throws "no centers" when the
// selection is empty.
double exact_cost(const PointSet& points, const CenterSelection& centers);

// Same cost against arbitrary center coordinates (one row per center).
double cost_to_points(const PointSet& points, const PointSet& centers);

// Coordinatewise average of the selected rows. Throws on an empty subset.
std::vector<double> subset_mean(const PointSet& points,
                                std::span<const std::size_t> subset);

// Residual of the cost-about-mean decomposition
//   cost(subset, {c}) = |subset| * |c - mu|^2 + cost(subset, {mu})
// evaluated with both sides computed independently. Zero up to rounding.
double cost_decomposition_residual(const PointSet& points,
                                   std::span<const std::size_t> subset,
                                   std::span<const double> center);

// Synthetic data. Unit-sphere: each coordinate uniform in [-1, 1], then
// the vector is scaled to unit length (zero vectors are redrawn).
// Gaussian mixture: component means from mixture_centers() plus isotropic
// sigma noise, points assigned round-robin. Deterministic given the seed.
PointSet generate(const GenSpec& spec);

// The mixture component means implied by a gaussian-mixture spec:
// mean j sits at separation*sigma along coordinate axis j. Pure function
// of the spec (no randomness), so quality checks can recover them.
PointSet mixture_centers(const GenSpec& spec);

// Text format: first line "n d", then n lines of d comma-separated
// decimals; LF endings. Values survive a save/load round trip bitwise.
void save_points(const PointSet& points, const std::string& path);
PointSet load_points(const std::string& path);

}  // namespace sketchseed
