#pragma once

#include <cstddef>
#include <span>

namespace sketchseed {

// Squared Euclidean distance between two length-`dim` rows. The
// accumulation order is fixed left-to-right and must stay that way:
// every caller (exact costs, sketched costs, the baseline scans) has to
// agree bitwise whenever the inputs agree bitwise, which holds as long
// as nothing reassociates the sum.
inline double sq_dist(const double* a, const double* b, std::size_t dim) {
  double s = 0.0;
  for (std::size_t t = 0; t < dim; ++t) {
    const double diff = a[t] - b[t];
    s += diff * diff;
  }
  return s;
}

inline double sq_dist(std::span<const double> a, std::span<const double> b) {
  return sq_dist(a.data(), b.data(), a.size());
}

// Pairwise (tree) reduction of f(i) over [lo, hi). The tree shape depends
// only on the index range, so two callers summing the same per-index
// values produce bitwise-identical totals. Bounds the accumulation error
// to O(log n) ulps, which the 1e-9-relative comparisons rely on.
template <class F>
double pairwise_transform_sum(std::size_t lo, std::size_t hi, F&& f) {
  if (hi <= lo) return 0.0;
  if (hi - lo <= 16) {
    double s = f(lo);
    for (std::size_t i = lo + 1; i < hi; ++i) s += f(i);
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_transform_sum(lo, mid, f) + pairwise_transform_sum(mid, hi, f);
}

inline double pairwise_sum(std::span<const double> values) {
  return pairwise_transform_sum(std::size_t{0}, values.size(),
                                [&](std::size_t i) { return values[i]; });
}

}  // namespace sketchseed
