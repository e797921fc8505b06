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

#include <cstddef>
#include <span>
#include <vector>

#include "logad/autoencoder.hpp"
#include "logad/ingest.hpp"
#include "logad/random.hpp"

namespace logad {

/// Exact-duplicate removal keyed on (bit pattern of the value vector,
/// label); the first occurrence survives and order is preserved.
std::vector<FeatureSequence> remove_duplicates(std::vector<FeatureSequence> features);

/// Concatenates positives then negatives, removes duplicates, adds
/// N(0, noise_variance) to every entry, rounds half away from zero and
/// clamps to [0, V]. Throws std::invalid_argument when sequence lengths
/// differ or the variance is negative.
std::vector<LabeledExample> assemble(std::span<const FeatureSequence> positive,
                                     std::span<const FeatureSequence> negative,
                                     std::size_t vocab_size, double noise_variance, Rng& rng);

struct SplitSpec {
  double test_fraction = 0.95;
  /// Share of the non-test remainder used for training; the rest validates.
  double train_fraction = 0.05;

  void validate() const;
  /// 0.85 train share for IMDB and OpenStack, 0.05 for BGL and Thunderbird,
  /// 0.85 for generic corpora.
  static SplitSpec for_dataset(DatasetKind kind);
};

struct SplitSizes {
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
};

/// test = round_half_up(test_fraction * N), train = round_half_up(
/// train_fraction * (N - test)), validation = the rest. Throws
/// std::invalid_argument when N < 20 or any partition is empty.
SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);

struct DataSplit {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> validation;
  std::vector<LabeledExample> test;
};

/// Shuffles, then takes test, train and validation in that order.
DataSplit split(std::vector<LabeledExample> data, const SplitSpec& spec, Rng& rng);

}  // namespace logad
