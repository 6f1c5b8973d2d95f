// Copyright 2026 The ldptest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LDP_RNG_HPP_
#define LDP_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ldp {

// SplitMix64 finalizer (Steele, Lea & Flood 2014). Bijective on uint64.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/**
 * Counter-based, splittable random stream.
 *
 * A stream is identified by a 64-bit key derived from the master seed and
 * the sequence of `derive` labels leading to it. Output word i is
 * mix64(key + (i+1)*golden), i.e. a SplitMix64 sequence seeded at the key.
 * Two streams with the same (seed, path) produce identical output; streams
 * with distinct paths are statistically independent for simulation purposes.
 *
 * Streams are plain values: copy them, move them across threads, but do not
 * share one instance mutably between threads.
 */
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed)
      : key_(mix64(master_seed + kGolden)) {}

  // Child stream whose path extends this stream's path by `label`.
  // The parent is untouched and remains usable.
  RngStream derive(std::uint64_t label) const {
    return RngStream(FromKey{}, mix64(key_ + kGolden + mix64(label)));
  }

  std::uint64_t next_u64() {
    counter_ += kGolden;
    return mix64(key_ + counter_);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on the open interval (0, 1); safe to pass through log().
  double uniform01_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  bool bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("bernoulli: p must lie in [0, 1]");
    }
    return uniform01() < p;
  }

  // Standard Laplace draw, density exp(-|x|)/2, via the inverse CDF.
  double laplace_std() {
    const double v = uniform01_open() - 0.5;
    const double mag = std::log1p(-2.0 * std::abs(v));  // <= 0
    return v < 0.0 ? mag : -mag;
  }

  // Uniform integer in [0, n). Rejection sampling, exactly uniform.
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n == 0) {
      throw std::invalid_argument("uniform_int: n must be positive");
    }
    const std::uint64_t residue = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
    const std::uint64_t limit = UINT64_MAX - residue;        // inclusive
    std::uint64_t r = next_u64();
    while (r > limit) {
      r = next_u64();
    }
    return r % n;
  }

 private:
  struct FromKey {};
  RngStream(FromKey, std::uint64_t key) : key_(key) {}

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Uniform permutation of {0, ..., n-1} (Fisher-Yates).
inline std::vector<std::size_t> random_permutation(RngStream& stream,
                                                   std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[stream.uniform_int(i)]);
  }
  return perm;
}

// Shuffles `perm` in place; equivalent in law to random_permutation.
inline void shuffle_in_place(RngStream& stream,
                             std::vector<std::size_t>& perm) {
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[stream.uniform_int(i)]);
  }
}

// Ordered k-tuple drawn without replacement from {0, ..., n-1}, uniform over
// all n!/(n-k)! tuples (partial Fisher-Yates).
inline std::vector<std::size_t> sample_without_replacement(RngStream& stream,
                                                           std::size_t n,
                                                           std::size_t k) {
  if (k > n || k == 0) {
    throw std::invalid_argument(
        "sample_without_replacement: need 1 <= k <= n");
  }
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + stream.uniform_int(n - i)]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace ldp

#endif  // LDP_RNG_HPP_
