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

#include "logad/assembly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <unordered_map>

namespace logad {
namespace {

std::uint64_t feature_hash(const FeatureSequence& f) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(to_int(f.label)));
  for (const double v : f.values) {
    h = mix64(h ^ std::bit_cast<std::uint64_t>(v));
  }
  return h;
}

bool same_bits(const FeatureSequence& a, const FeatureSequence& b) {
  return a.label == b.label && a.values.size() == b.values.size() &&
         std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)) == 0;
}

std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

}  // namespace

std::vector<FeatureSequence> remove_duplicates(std::vector<FeatureSequence> features) {
  std::unordered_multimap<std::uint64_t, std::size_t> seen;
  seen.reserve(features.size());
  std::vector<FeatureSequence> kept;
  kept.reserve(features.size());
  for (auto& f : features) {
    const std::uint64_t h = feature_hash(f);
    const auto [lo, hi] = seen.equal_range(h);
    const bool duplicate =
        std::any_of(lo, hi, [&](const auto& entry) { return same_bits(kept[entry.second], f); });
    if (!duplicate) {
      seen.emplace(h, kept.size());
      kept.push_back(std::move(f));
    }
  }
  return kept;
}

std::vector<LabeledExample> assemble(std::span<const FeatureSequence> positive,
                                     std::span<const FeatureSequence> negative,
                                     std::size_t vocab_size, double noise_variance, Rng& rng) {
  if (!(noise_variance >= 0.0)) {
    throw std::invalid_argument("assemble: noise variance must be non-negative");
  }
  std::vector<FeatureSequence> all;
  all.reserve(positive.size() + negative.size());
  all.insert(all.end(), positive.begin(), positive.end());
  all.insert(all.end(), negative.begin(), negative.end());
  if (!all.empty()) {
    const std::size_t length = all.front().values.size();
    for (const auto& f : all) {
      if (f.values.size() != length) {
        throw std::invalid_argument("assemble: feature sequences differ in length");
      }
    }
  }

  all = remove_duplicates(std::move(all));

  const double upper = static_cast<double>(vocab_size);
  std::vector<LabeledExample> out;
  out.reserve(all.size());
  for (const auto& f : all) {
    const std::vector<double> noise = gaussian_sample(rng, 0.0, noise_variance, f.values.size());
    LabeledExample ex;
    ex.label = f.label;
    ex.indices.resize(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      const double v = std::clamp(std::round(f.values[i] + noise[i]), 0.0, upper);
      ex.indices[i] = static_cast<std::uint32_t>(v);
    }
    out.push_back(std::move(ex));
  }
  return out;
}

void SplitSpec::validate() const {
  if (!(test_fraction > 0.0 && test_fraction < 1.0) ||
      !(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("split fractions must lie in (0, 1)");
  }
}

SplitSpec SplitSpec::for_dataset(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::bgl:
    case DatasetKind::thunderbird:
      return {0.95, 0.05};
    case DatasetKind::imdb:
    case DatasetKind::openstack:
    case DatasetKind::generic:
      return {0.95, 0.85};
  }
  return {};
}

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
  spec.validate();
  if (n < 20) {
    throw std::invalid_argument("split: need at least 20 examples, got " + std::to_string(n));
  }
  SplitSizes sizes;
  sizes.test = std::min(n, round_half_up(spec.test_fraction * static_cast<double>(n)));
  const std::size_t rest = n - sizes.test;
  sizes.train = std::min(rest, round_half_up(spec.train_fraction * static_cast<double>(rest)));
  sizes.validation = rest - sizes.train;
  if (sizes.test == 0 || sizes.train == 0 || sizes.validation == 0) {
    throw std::invalid_argument("split: empty partition (test " + std::to_string(sizes.test) +
                                ", train " + std::to_string(sizes.train) + ", validation " +
                                std::to_string(sizes.validation) + ")");
  }
  return sizes;
}

DataSplit split(std::vector<LabeledExample> data, const SplitSpec& spec, Rng& rng) {
  const SplitSizes sizes = split_sizes(data.size(), spec);
  seeded_shuffle(data, rng);
  DataSplit out;
  auto first = std::make_move_iterator(data.begin());
  const auto test_end = first + static_cast<std::ptrdiff_t>(sizes.test);
  const auto train_end = test_end + static_cast<std::ptrdiff_t>(sizes.train);
  out.test.assign(first, test_end);
  out.train.assign(test_end, train_end);
  out.validation.assign(train_end, std::make_move_iterator(data.end()));
  return out;
}

}  // namespace logad
