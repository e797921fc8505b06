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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logad/ingest.hpp"
#include "logad/metrics.hpp"
#include "logad/numerics.hpp"
#include "logad/random.hpp"
#include "logad/recurrent.hpp"

namespace logad {

struct ClfTrainConfig {
  std::size_t hidden = 100;
  std::size_t embedding_dim = 64;
  std::size_t folds = 10;
  std::size_t batch_size = 128;
  std::size_t max_epochs = 100;
  double dropout = 0.8;  // drop probability on the head input
  std::size_t patience = 5;
  double clip_norm = 5.0;  // global gradient norm; <= 0 disables clipping
  std::uint64_t seed = 0;
  AdamOptions adam;

  void validate() const;
};

struct ClfEpochLog {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double heldout_loss = 0.0;
  double heldout_accuracy = 0.0;
};

/// One model trained with early stopping on a held-out set. The reported
/// statistics are those of the best epoch, whose weights are kept.
struct FitResult {
  ClassifierParams params;
  std::vector<ClfEpochLog> log;
  std::size_t best_epoch = 0;
  bool stopped_early = false;
  std::size_t clip_events = 0;
};

FitResult fit_classifier(std::span<const LabeledExample> train,
                         std::span<const LabeledExample> heldout, Arch arch,
                         std::size_t vocab_size, const ClfTrainConfig& config, Rng& rng);

struct FoldResult {
  std::size_t fold = 0;
  std::size_t train_size = 0;
  std::size_t heldout_size = 0;
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;
  double train_accuracy = 0.0;
  double train_loss = 0.0;
  double heldout_accuracy = 0.0;
  double heldout_loss = 0.0;
  std::size_t clip_events = 0;

  bool operator==(const FoldResult&) const = default;
};

struct CvReport {
  Arch arch = Arch::lstm;
  std::vector<FoldResult> folds;
  MeanStd train_accuracy;
  MeanStd train_loss;
  MeanStd heldout_accuracy;
  std::size_t selected_fold = 0;
  double validation_accuracy = 0.0;
  double validation_loss = 0.0;
  std::size_t clip_events = 0;

  std::string to_json() const;
  static CvReport from_json(std::string_view text);
};

struct TrainedClassifier {
  ClassifierParams params;
  CvReport report;
};

/// Contiguous k-fold cross validation over `train`. Each fold model is
/// early-stopped on its own held-out fold; the fold with the highest
/// held-out accuracy (lowest index on ties) is returned and scored on
/// `validation`. Throws std::invalid_argument when folds > train size and
/// DivergenceError on a non-finite loss.
TrainedClassifier train_classifier(std::span<const LabeledExample> train,
                                   std::span<const LabeledExample> validation, Arch arch,
                                   std::size_t vocab_size, const ClfTrainConfig& config);

/// Half-open index range of fold `k` out of `folds` over `n` items.
std::pair<std::size_t, std::size_t> fold_bounds(std::size_t n, std::size_t folds, std::size_t k);

struct Evaluation {
  double loss = 0.0;
  double accuracy = 0.0;
  std::vector<Label> predictions;
};

/// Inference-mode loss, accuracy and argmax predictions (ties go to label 0).
Evaluation evaluate_classifier(const ClassifierParams& params,
                               std::span<const LabeledExample> data,
                               std::size_t batch_size = 256);

}  // namespace logad
