#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sketchseed/point_set.hpp"
#include "sketchseed/rng.hpp"
#include "sketchseed/sketch.hpp"

namespace sketchseed {

// Maintains, for every data point, the squared sketch distance to each
// current center together with the minimum, supporting cost readout,
// center insert/remove, D^2 sampling, and non-mutating what-if queries.
//
// Realization: centers get dense slot ids from a shared registry; each
// point keeps a distance per slot plus a cached (min distance, min
// center) pair, rescanned only when the minimum's center is removed.
// Ties in distance break toward the smaller center index, so the tracked
// minimum is the unique lexicographic (distance, center) minimum and all
// results are independent of operation history.
//
// Concurrency: insert/erase need exclusive access; query/sample are
// const and may run concurrently with each other. cost() refreshes the
// cached sum (same value it already holds after any mutation); use
// cached_cost() for concurrent reads.
class DistanceOracle {
 public:
  // Projects the points once and installs the initial centers. The point
  // set must outlive the oracle. forced_m overrides the sketch dimension
  // formula when nonzero; capacity_hint preallocates center slots.
  DistanceOracle(const PointSet& points, const SketchSpec& spec,
                 std::span<const std::size_t> initial_centers = {},
                 std::size_t forced_m = 0, std::size_t capacity_hint = 0);

  // Recomputes the cached cost as the sum of per-point minima, O(n).
  // Throws "no centers" while the center set is empty.
  double cost();

  // Adds center j and its distance to every point, O(n(m + 1)); refreshes
  // the cost. Throws on a duplicate or out-of-range index.
  void insert(std::size_t j);

  // Removes center j from every point, O(n) plus rescans for points whose
  // minimum it was; refreshes the cost. Throws if j is not a center or is
  // the last one.
  void erase(std::size_t j);

  // Draws a point index with probability proportional to its current
  // squared distance to the nearest center, O(n). All-zero weights fall
  // back to uniform over non-centers (over everything if none).
  std::size_t sample(Xoshiro256pp& rng) const;

  // Cost of the center set with j hypothetically added, O(n m); does not
  // mutate. j may already be a center (the result then equals cost()).
  double query(std::size_t j) const;

  std::size_t point_count() const { return n_; }
  std::size_t center_count() const { return center_count_; }
  bool empty() const { return center_count_ == 0; }
  bool is_center(std::size_t j) const {
    return j < n_ && slot_of_center_[j] >= 0;
  }
  std::vector<std::size_t> centers() const;  // ascending

  // Cached cost refreshed by the last mutation; throws while empty.
  double cached_cost() const;

  // Introspection for tests and diagnostics.
  double point_min(std::size_t i) const;
  std::size_t point_min_center(std::size_t i) const;
  double stored_distance(std::size_t i, std::size_t j) const;
  std::span<const double> min_distances() const {
    return {min_dist_.data(), n_};
  }
  const SketchedSet& sketch() const { return sketch_; }

 private:
  std::size_t allocate_slot();
  void rescan_min(std::size_t i);
  void refresh_cost();
  double* slot_column(std::size_t slot) { return dist_.data() + slot * n_; }
  const double* slot_column(std::size_t slot) const {
    return dist_.data() + slot * n_;
  }

  static constexpr std::uint32_t kNoCenter = 0xffffffffu;

  const PointSet* points_;
  SketchedSet sketch_;
  std::size_t n_ = 0;

  // Center registry shared by all per-point structures.
  std::vector<std::int32_t> slot_of_center_;   // n, -1 = not a center
  std::vector<std::uint32_t> center_of_slot_;  // capacity, kNoCenter = free
  std::vector<std::uint32_t> free_slots_;
  std::size_t center_count_ = 0;

  std::vector<double> dist_;  // capacity columns of n (slot-major)
  std::vector<double> min_dist_;
  std::vector<std::uint32_t> min_center_;
  double sum_ = 0.0;
};

}  // namespace sketchseed
