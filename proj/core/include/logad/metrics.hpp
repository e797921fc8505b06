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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logad/ingest.hpp"

namespace logad {

/// Counts with `positive` as the label under evaluation.
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + tn + fp + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

/// Throws std::invalid_argument on empty or mismatched inputs.
ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> actuals,
                          Label positive);

/// (tp + tn) / total. Throws std::domain_error on an empty matrix.
double accuracy(const ConfusionMatrix& cm);

/// A ratio whose denominator may be zero. Undefined ratios carry value 0
/// and set `undefined` so reports can flag them.
struct Ratio {
  double value = 0.0;
  bool undefined = false;
};

Ratio precision(const ConfusionMatrix& cm);
Ratio recall(const ConfusionMatrix& cm);
/// Harmonic mean, 0 when p + r = 0.
double f_measure(double p, double r);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

MeanStd mean_std(std::span<const double> values);

struct LabelMetrics {
  Label label = Label::negative;
  ConfusionMatrix counts;
  Ratio precision;
  Ratio recall;
  double f_measure = 0.0;
};

struct FoldStats {
  double train_accuracy = 0.0;
  double train_loss = 0.0;
  double heldout_accuracy = 0.0;

  bool operator==(const FoldStats&) const = default;
};

/// One row of the results table plus the run metadata needed to rerun it.
struct MetricsReport {
  std::string dataset;
  std::string arch;
  std::uint64_t seed = 0;
  std::string config_hash;

  MeanStd train_accuracy;
  MeanStd validation_accuracy;  // mean held-out fold accuracy
  MeanStd train_loss;
  double split_validation_accuracy = 0.0;  // selected model on the validation split
  std::vector<FoldStats> folds;

  std::uint64_t test_size = 0;
  double test_accuracy = 0.0;
  double majority_baseline = 0.0;  // accuracy of always predicting the majority test label
  std::array<LabelMetrics, 2> labels{};  // label 0, then label 1
  std::vector<std::string> warnings;

  bool operator==(const MetricsReport& other) const;
};

/// Fills the test-set fields (accuracy, per-label metrics, warnings) from
/// predictions; the caller supplies the CV statistics and metadata.
void fill_test_metrics(MetricsReport& report, std::span<const Label> predictions,
                       std::span<const Label> actuals);

/// Fixed-column text table: averages as percentages to one decimal with the
/// standard deviation to two decimals in parentheses, one row per label.
std::string render_table(const MetricsReport& report);

std::string to_json(const MetricsReport& report);
MetricsReport metrics_from_json(std::string_view json);

/// "label,tp,tn,fp,fn" header plus one line per label.
std::string confusion_csv(const MetricsReport& report);

struct RenderedReport {
  std::string table;
  std::string json;
};

RenderedReport render_report(const MetricsReport& report);

}  // namespace logad
