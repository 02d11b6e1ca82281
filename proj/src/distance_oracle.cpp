#include "sketchseed/distance_oracle.hpp"

#include <limits>
#include <stdexcept>

#include "sketchseed/numeric.hpp"

namespace sketchseed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lexicographic (distance, center) order; the tie rule keeps the tracked
// minimum unique and history-independent.
inline bool closer(double d1, std::uint32_t c1, double d2, std::uint32_t c2) {
  return d1 < d2 || (d1 == d2 && c1 < c2);
}

}  // namespace

DistanceOracle::DistanceOracle(const PointSet& points, const SketchSpec& spec,
                               std::span<const std::size_t> initial_centers,
                               std::size_t forced_m, std::size_t capacity_hint)
    : points_(&points),
      sketch_(project(points, spec, forced_m)),
      n_(points.n),
      slot_of_center_(points.n, -1),
      min_dist_(points.n, kInf),
      min_center_(points.n, kNoCenter) {
  if (capacity_hint > 0) {
    center_of_slot_.assign(capacity_hint, kNoCenter);
    dist_.assign(capacity_hint * n_, 0.0);
    for (std::size_t s = capacity_hint; s-- > 0;) {
      free_slots_.push_back(static_cast<std::uint32_t>(s));
    }
  }
  for (std::size_t j : initial_centers) insert(j);
}

std::size_t DistanceOracle::allocate_slot() {
  if (free_slots_.empty()) {
    const std::size_t old_cap = center_of_slot_.size();
    const std::size_t new_cap = old_cap == 0 ? 4 : old_cap * 2;
    // Slot-major layout: existing columns keep their offsets on growth.
    dist_.resize(new_cap * n_, 0.0);
    center_of_slot_.resize(new_cap, kNoCenter);
    for (std::size_t s = new_cap; s-- > old_cap;) {
      free_slots_.push_back(static_cast<std::uint32_t>(s));
    }
  }
  const std::size_t slot = free_slots_.back();
  free_slots_.pop_back();
  return slot;
}

void DistanceOracle::refresh_cost() {
  sum_ = empty() ? 0.0
                 : pairwise_transform_sum(std::size_t{0}, n_,
                                          [&](std::size_t i) {
                                            return min_dist_[i];
                                          });
}

void DistanceOracle::insert(std::size_t j) {
  if (j >= n_) throw std::out_of_range("center index out of range");
  if (slot_of_center_[j] >= 0) throw std::invalid_argument("duplicate center");
  const std::size_t slot = allocate_slot();
  const auto cj = static_cast<std::uint32_t>(j);
  double* column = slot_column(slot);
  const double* yj = sketch_.row_data(j);
  const double* rows = sketch_.rows.data();
  const std::size_t m = sketch_.m;
  for (std::size_t i = 0; i < n_; ++i) {
    const double dd = sq_dist(rows + i * m, yj, m);
    column[i] = dd;
    if (closer(dd, cj, min_dist_[i], min_center_[i])) {
      min_dist_[i] = dd;
      min_center_[i] = cj;
    }
  }
  slot_of_center_[j] = static_cast<std::int32_t>(slot);
  center_of_slot_[slot] = cj;
  ++center_count_;
  refresh_cost();
}

void DistanceOracle::rescan_min(std::size_t i) {
  double best = kInf;
  std::uint32_t best_center = kNoCenter;
  for (std::size_t s = 0; s < center_of_slot_.size(); ++s) {
    const std::uint32_t c = center_of_slot_[s];
    if (c == kNoCenter) continue;
    const double dd = slot_column(s)[i];
    if (closer(dd, c, best, best_center)) {
      best = dd;
      best_center = c;
    }
  }
  min_dist_[i] = best;
  min_center_[i] = best_center;
}

void DistanceOracle::erase(std::size_t j) {
  if (j >= n_) throw std::out_of_range("center index out of range");
  if (slot_of_center_[j] < 0) throw std::invalid_argument("not a center");
  if (center_count_ == 1) {
    throw std::logic_error("cannot remove the last center");
  }
  const auto slot = static_cast<std::size_t>(slot_of_center_[j]);
  const auto cj = static_cast<std::uint32_t>(j);
  slot_of_center_[j] = -1;
  center_of_slot_[slot] = kNoCenter;
  --center_count_;
  for (std::size_t i = 0; i < n_; ++i) {
    if (min_center_[i] == cj) rescan_min(i);
  }
  free_slots_.push_back(static_cast<std::uint32_t>(slot));
  refresh_cost();
}

double DistanceOracle::cost() {
  if (empty()) throw std::logic_error("no centers");
  refresh_cost();
  return sum_;
}

double DistanceOracle::cached_cost() const {
  if (empty()) throw std::logic_error("no centers");
  return sum_;
}

std::size_t DistanceOracle::sample(Xoshiro256pp& rng) const {
  if (empty()) throw std::logic_error("no centers");
  return d2_sample_index(
      min_distances(), [&](std::size_t i) { return slot_of_center_[i] >= 0; },
      center_count_, rng);
}

double DistanceOracle::query(std::size_t j) const {
  if (empty()) throw std::logic_error("no centers");
  if (j >= n_) throw std::out_of_range("center index out of range");
  const double* yj = sketch_.row_data(j);
  const double* rows = sketch_.rows.data();
  const std::size_t m = sketch_.m;
  return pairwise_transform_sum(std::size_t{0}, n_, [&](std::size_t i) {
    return std::min(min_dist_[i], sq_dist(rows + i * m, yj, m));
  });
}

std::vector<std::size_t> DistanceOracle::centers() const {
  std::vector<std::size_t> out;
  out.reserve(center_count_);
  for (std::size_t j = 0; j < n_; ++j) {
    if (slot_of_center_[j] >= 0) out.push_back(j);
  }
  return out;
}

double DistanceOracle::point_min(std::size_t i) const {
  if (i >= n_) throw std::out_of_range("point index out of range");
  if (empty()) throw std::logic_error("no centers");
  return min_dist_[i];
}

std::size_t DistanceOracle::point_min_center(std::size_t i) const {
  if (i >= n_) throw std::out_of_range("point index out of range");
  if (empty()) throw std::logic_error("no centers");
  return min_center_[i];
}

double DistanceOracle::stored_distance(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw std::out_of_range("index out of range");
  if (slot_of_center_[j] < 0) throw std::invalid_argument("not a center");
  return slot_column(static_cast<std::size_t>(slot_of_center_[j]))[i];
}

}  // namespace sketchseed
