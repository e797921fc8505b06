/* Copyright 2026 The logad Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace logad {

/// Seeded random stream backed by std::mt19937_64, whose output sequence is
/// fixed by the C++ standard. All derived quantities (uniforms, normals,
/// bounded integers) are computed here rather than through the
/// implementation-defined <random> distributions, so a seed yields the same
/// stream on every conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi);
  /// Standard normal via the Box-Muller transform (pairs are cached).
  double normal();
  /// Uniform integer on [0, n) by rejection; n must be positive.
  std::uint64_t below(std::uint64_t n);

  /// Independent child stream. Depends only on this stream's seed and
  /// `stream`, never on how far this stream has advanced.
  Rng derive(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

/// SplitMix64 finalizer; used for seed derivation and hashing.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// n i.i.d. draws from N(mean, variance). Throws std::invalid_argument for a
/// negative variance.
std::vector<double> gaussian_sample(Rng& rng, double mean, double variance, std::size_t n);

/// In-place Fisher-Yates shuffle driven by `rng`.
template <class T>
void seeded_shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

template <class T>
void seeded_shuffle(std::vector<T>& items, Rng& rng) {
  seeded_shuffle(std::span<T>(items), rng);
}

}  // namespace logad
