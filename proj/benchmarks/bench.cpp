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


#include <vector>

#include <benchmark/benchmark.h>

#include "logad/autoencoder.hpp"
#include "logad/recurrent.hpp"

namespace {

using namespace logad;

std::vector<LabeledExample> batch_of(std::size_t n, std::size_t length, std::size_t vocab) {
  Rng rng(5);
  std::vector<LabeledExample> out(n);
  for (auto& e : out) {
    e.indices.resize(length);
    for (auto& i : e.indices) i = static_cast<std::uint32_t>(rng.below(vocab + 1));
    e.label = rng.below(2) == 0 ? Label::negative : Label::positive;
  }
  return out;
}

void classifier_step(benchmark::State& state, Arch arch, bool backward) {
  Rng rng(1);
  const ClassifierParams p = init_classifier(arch, 100, 64, 100, rng);
  const auto data = batch_of(128, 40, 100);
  std::vector<const LabeledExample*> refs;
  for (const auto& e : data) refs.push_back(&e);
  const Matrix mask = make_feature_dropout(p, refs.size(), 0.8, rng);
  for (auto _ : state) {
    const ClassifierCache cache = classify_forward(p, refs, mask);
    if (backward) {
      benchmark::DoNotOptimize(classify_backward(p, cache));
    } else {
      benchmark::DoNotOptimize(cache.probabilities.data());
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(refs.size()));
}

BENCHMARK_CAPTURE(classifier_step, lstm_forward, Arch::lstm, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(classifier_step, lstm_backward, Arch::lstm, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(classifier_step, blstm_backward, Arch::blstm, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(classifier_step, gru_forward, Arch::gru, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(classifier_step, gru_backward, Arch::gru, true)->Unit(benchmark::kMillisecond);

void autoencoder_step(benchmark::State& state) {
  Rng rng(2);
  const std::size_t hidden[] = {400, 200, 200};
  const AutoencoderParams p = init_autoencoder(40, hidden, 0.01, rng);
  const auto data = batch_of(128, 40, 100);
  std::vector<AeSample> samples;
  for (auto e : data) {
    e.indices[0] = 1;
    samples.push_back(normalize_sequence(e, 100));
  }
  std::vector<const AeSample*> refs;
  for (const auto& s : samples) refs.push_back(&s);
  const AeBatch batch = make_batch(refs);
  const DropoutMasks masks = make_dropout_masks(p, refs.size(), 0.8, rng);
  for (auto _ : state) {
    const AeForwardCache cache = ae_forward(p, batch.inputs, masks);
    benchmark::DoNotOptimize(ae_backward(p, cache, batch.targets));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(refs.size()));
}

BENCHMARK(autoencoder_step)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
