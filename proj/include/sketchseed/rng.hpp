#pragma once

// Seedable, portable randomness. Every random choice in the library goes
// through these types: xoshiro256++ as the bit source (seeded through
// SplitMix64) plus explicit word-to-value mappings. The mappings use only
// exact binary arithmetic where possible so that the same seed yields the
// same stream everywhere; see README for the identity.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>

#include "sketchseed/numeric.hpp"

namespace sketchseed {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4] = {};
};

// Uniform double in [0, 1), 53 significant bits.
inline double uniform_unit(Xoshiro256pp& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1]; safe as a log argument.
inline double uniform_open_unit(Xoshiro256pp& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

inline double uniform_range(Xoshiro256pp& rng, double lo, double hi) {
  return lo + uniform_unit(rng) * (hi - lo);
}

// Standard normal via Box-Muller. Stateless (no cached spare), two words
// per draw.
inline double normal_unit(Xoshiro256pp& rng) {
  const double u1 = uniform_open_unit(rng);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// Unbiased integer in [0, n) (Lemire's multiply-shift with rejection).
inline std::uint64_t uniform_index(Xoshiro256pp& rng, std::uint64_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// Draws index i with probability weights[i] / sum(weights). When all
// weights are zero the draw falls back to uniform over non-centers if any
// exist, else uniform over everything. `is_center` marks current centers
// (zero-weight by construction when the total is positive, so they are
// never drawn on the weighted path).
template <class IsCenter>
std::size_t d2_sample_index(std::span<const double> weights,
                            IsCenter&& is_center, std::size_t center_count,
                            Xoshiro256pp& rng) {
  const std::size_t n = weights.size();
  const double total = pairwise_sum(weights);
  if (total > 0.0) {
    const double r = uniform_unit(rng) * total;
    double acc = 0.0;
    std::size_t last_positive = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (weights[i] > 0.0) last_positive = i;
      acc += weights[i];
      if (r < acc) return i;
    }
    // The sequential walk can undershoot the tree-summed total by a few
    // ulps; land on the last point that carries any mass.
    return last_positive != n ? last_positive : n - 1;
  }
  if (center_count < n) {
    std::uint64_t skip = uniform_index(rng, n - center_count);
    for (std::size_t i = 0; i < n; ++i) {
      if (is_center(i)) continue;
      if (skip == 0) return i;
      --skip;
    }
  }
  return static_cast<std::size_t>(uniform_index(rng, n));
}

// Uniform draw over indices in [0, n) for which is_member is false.
// Requires member_count < n.
template <class IsMember>
std::size_t uniform_nonmember_index(std::size_t n, IsMember&& is_member,
                                    std::size_t member_count,
                                    Xoshiro256pp& rng) {
  std::uint64_t skip = uniform_index(rng, n - member_count);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_member(i)) continue;
    if (skip == 0) return i;
    --skip;
  }
  return n - 1;  // unreachable when member_count < n
}

}  // namespace sketchseed
