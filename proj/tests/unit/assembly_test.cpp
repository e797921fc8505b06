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


#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "logad/assembly.hpp"
#include "support/oracles.hpp"

namespace logad {
namespace {

using testing::Gen;

FeatureSequence feature(std::vector<double> values, Label label) { return {std::move(values), label}; }

TEST(Dedupe, IdenticalPairsCollapse) {
  const auto out = remove_duplicates({feature({1.0, 2.5}, Label::positive),
                                      feature({1.0, 2.5}, Label::positive)});
  EXPECT_EQ(out.size(), 1u);
}

TEST(Dedupe, SameVectorDifferentLabelsBothSurvive) {
  const auto out = remove_duplicates({feature({1.0, 2.5}, Label::positive),
                                      feature({1.0, 2.5}, Label::negative)});
  EXPECT_EQ(out.size(), 2u);
}

TEST(Dedupe, KeysOnBitPattern) {
  const auto out = remove_duplicates({feature({0.0}, Label::positive),
                                      feature({-0.0}, Label::positive),
                                      feature({0.1 + 0.2}, Label::positive),
                                      feature({0.3}, Label::positive)});
  EXPECT_EQ(out.size(), 4u);
}

TEST(Dedupe, RemovesExactlyTheConstructedDuplicates) {
  Gen gen(41);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FeatureSequence> base;
    for (int i = 0; i < 30; ++i) {
      std::vector<double> v(4);
      for (auto& x : v) x = gen.real(0.0, 10.0);
      base.push_back(feature(v, gen.coin() ? Label::positive : Label::negative));
    }
    std::vector<FeatureSequence> input = base;
    std::size_t copies = gen.index(40);
    for (std::size_t c = 0; c < copies; ++c) {
      input.insert(input.begin() + static_cast<std::ptrdiff_t>(gen.index(input.size() + 1)),
                   base[gen.index(base.size())]);
    }
    const auto out = remove_duplicates(input);
    ASSERT_EQ(out.size(), base.size());
    std::vector<const FeatureSequence*> firsts;
    for (const auto& f : input) {
      const bool seen = std::any_of(firsts.begin(), firsts.end(), [&](const FeatureSequence* g) {
        return g->values == f.values && g->label == f.label;
      });
      if (!seen) firsts.push_back(&f);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      EXPECT_EQ(out[i].values, firsts[i]->values);
      EXPECT_EQ(out[i].label, firsts[i]->label);
    }
  }
}

TEST(Assemble, ZeroNoiseRoundsAndClamps) {
  const std::vector<FeatureSequence> pos{feature({0.4, 0.5, 2.5, 11.7}, Label::positive)};
  const std::vector<FeatureSequence> neg{feature({-0.6, 3.49, 9.5, 10.0}, Label::negative)};
  Rng rng(1);
  const auto out = assemble(pos, neg, 10, 0.0, rng);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].indices, (std::vector<std::uint32_t>{0, 1, 3, 10}));
  EXPECT_EQ(out[0].label, Label::positive);
  EXPECT_EQ(out[1].indices, (std::vector<std::uint32_t>{0, 3, 10, 10}));
  EXPECT_EQ(out[1].label, Label::negative);
}

TEST(Assemble, SizeAndRangeProperties) {
  Gen gen(42);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<FeatureSequence> pos, neg;
    for (int i = 0; i < 40; ++i) {
      std::vector<double> v(5);
      for (auto& x : v) x = gen.real(-3.0, 25.0);
      (gen.coin() ? pos : neg).push_back(feature(v, Label::positive));
    }
    for (auto& f : neg) f.label = Label::negative;
    const std::size_t dup = gen.index(5);
    for (std::size_t d = 0; d < dup && !pos.empty(); ++d) pos.push_back(pos.front());
    Rng a(trial), b(trial);
    const auto out = assemble(pos, neg, 20, 0.1, a);
    EXPECT_EQ(out.size(), pos.size() + neg.size() - (pos.empty() ? 0 : dup));
    for (const auto& e : out) {
      for (const auto idx : e.indices) EXPECT_LE(idx, 20u);
    }
    EXPECT_EQ(out, assemble(pos, neg, 20, 0.1, b));
  }
}

TEST(Assemble, RejectsRaggedInputAndNegativeVariance) {
  const std::vector<FeatureSequence> pos{feature({1.0, 2.0}, Label::positive)};
  const std::vector<FeatureSequence> neg{feature({1.0}, Label::negative)};
  Rng rng(2);
  EXPECT_THROW(assemble(pos, neg, 5, 0.1, rng), std::invalid_argument);
  EXPECT_THROW(assemble(pos, {}, 5, -0.1, rng), std::invalid_argument);
}

TEST(SplitSizes, KnownCorpusSizes) {
  struct Case {
    std::size_t n;
    SplitSpec spec;
    std::size_t test, train, validation;
  };
  const Case cases[] = {
      {4'747'962, {0.95, 0.05}, 4'510'564, 11'869, 225'529},
      {49'565, {0.95, 0.85}, 47'087, 2'106, 372},
      {155'508, {0.95, 0.85}, 147'733, 6'608, 1'167},
      {6'248'239, {0.95, 0.05}, 5'935'828, 15'620, 296'791},
  };
  for (const auto& c : cases) {
    const SplitSizes s = split_sizes(c.n, c.spec);
    EXPECT_LE(std::max(s.test, c.test) - std::min(s.test, c.test), 1u) << c.n;
    EXPECT_LE(std::max(s.train, c.train) - std::min(s.train, c.train), 1u) << c.n;
    EXPECT_LE(std::max(s.validation, c.validation) - std::min(s.validation, c.validation), 1u)
        << c.n;
    EXPECT_EQ(s.test + s.train + s.validation, c.n);
  }
}

TEST(SplitSizes, DatasetDefaultsAndErrors) {
  EXPECT_EQ(SplitSpec::for_dataset(DatasetKind::bgl).train_fraction, 0.05);
  EXPECT_EQ(SplitSpec::for_dataset(DatasetKind::imdb).train_fraction, 0.85);
  EXPECT_THROW(split_sizes(19, {}), std::invalid_argument);
  EXPECT_THROW(split_sizes(100, {1.0, 0.5}), std::invalid_argument);
  EXPECT_THROW(split_sizes(20, {0.95, 0.05}), std::invalid_argument);
}

TEST(Split, PartitionsTheMultiset) {
  Gen gen(43);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<LabeledExample> data;
    const std::size_t n = 40 + gen.index(200);
    for (std::size_t i = 0; i < n; ++i) data.push_back(gen.example(3, 4));
    Rng a(trial), b(trial);
    const DataSplit s = split(data, {0.9, 0.6}, a);
    const SplitSizes sizes = split_sizes(n, {0.9, 0.6});
    EXPECT_EQ(s.test.size(), sizes.test);
    EXPECT_EQ(s.train.size(), sizes.train);
    EXPECT_EQ(s.validation.size(), sizes.validation);
    std::map<std::vector<std::uint32_t>, int> count;
    for (const auto& e : data) ++count[e.indices];
    for (const auto* part : {&s.test, &s.train, &s.validation}) {
      for (const auto& e : *part) --count[e.indices];
    }
    for (const auto& [key, c] : count) EXPECT_EQ(c, 0);
    const DataSplit again = split(data, {0.9, 0.6}, b);
    EXPECT_EQ(s.train, again.train);
    EXPECT_EQ(s.test, again.test);
  }
}

}  // namespace
}  // namespace logad
