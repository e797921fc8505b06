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


#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "logad/metrics.hpp"
#include "support/oracles.hpp"

namespace logad {
namespace {

using testing::Gen;

std::vector<Label> labels(std::initializer_list<int> v) {
  std::vector<Label> out;
  for (const int x : v) out.push_back(label_from_int(x));
  return out;
}

TEST(Confusion, Examples) {
  const auto perfect = confusion(labels({1, 1, 0}), labels({1, 1, 0}), Label::positive);
  EXPECT_EQ(perfect, (ConfusionMatrix{2, 1, 0, 0}));
  const auto swapped = confusion(labels({1, 0}), labels({0, 1}), Label::positive);
  EXPECT_EQ(swapped.fp, 1u);
  EXPECT_EQ(swapped.fn, 1u);
  EXPECT_THROW(confusion(labels({1}), labels({1, 0}), Label::positive), std::invalid_argument);
  EXPECT_THROW(confusion({}, {}, Label::positive), std::invalid_argument);
}

TEST(Ratios, Examples) {
  EXPECT_DOUBLE_EQ(accuracy({3, 5, 1, 1}), 0.8);
  EXPECT_EQ(accuracy({4, 6, 0, 0}), 1.0);
  EXPECT_THROW(accuracy({}), std::domain_error);
  EXPECT_DOUBLE_EQ(precision({9, 0, 1, 0}).value, 0.9);
  EXPECT_DOUBLE_EQ(recall({9, 0, 0, 1}).value, 0.9);
  EXPECT_EQ(precision({5, 2, 0, 0}).value, 1.0);
  EXPECT_EQ(recall({5, 2, 0, 0}).value, 1.0);
  const Ratio undefined = precision({0, 4, 0, 3});
  EXPECT_TRUE(undefined.undefined);
  EXPECT_EQ(undefined.value, 0.0);
}

TEST(FMeasure, Examples) {
  EXPECT_DOUBLE_EQ(f_measure(0.7, 0.7), 0.7);
  EXPECT_EQ(f_measure(1.0, 0.0), 0.0);
  EXPECT_EQ(f_measure(0.0, 0.0), 0.0);
  EXPECT_NEAR(f_measure(0.98, 0.913), 0.9453, 0.0005);
}

TEST(Metrics, AgreeWithBruteForceRecount) {
  Gen gen(61);
  std::vector<Label> preds, actual;
  for (int i = 0; i < 1000; ++i) {
    preds.push_back(gen.coin(0.3) ? Label::negative : Label::positive);
    actual.push_back(gen.coin(0.25) ? Label::negative : Label::positive);
  }
  for (const Label pos : {Label::negative, Label::positive}) {
    std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      if (preds[i] == pos && actual[i] == pos) ++tp;
      if (preds[i] != pos && actual[i] != pos) ++tn;
      if (preds[i] == pos && actual[i] != pos) ++fp;
      if (preds[i] != pos && actual[i] == pos) ++fn;
    }
    const ConfusionMatrix cm = confusion(preds, actual, pos);
    EXPECT_EQ(cm, (ConfusionMatrix{tp, tn, fp, fn}));
    EXPECT_NEAR(accuracy(cm), double(tp + tn) / 1000.0, 1e-12);
    const double p = double(tp) / double(tp + fp);
    const double r = double(tp) / double(tp + fn);
    EXPECT_NEAR(precision(cm).value, p, 1e-12);
    EXPECT_NEAR(recall(cm).value, r, 1e-12);
    EXPECT_NEAR(f_measure(p, r), 2 * p * r / (p + r), 1e-12);
  }
}

TEST(Metrics, RangeAndBoundProperties) {
  Gen gen(62);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + gen.index(30);
    std::vector<Label> preds, actual;
    for (std::size_t i = 0; i < n; ++i) {
      preds.push_back(gen.coin() ? Label::positive : Label::negative);
      actual.push_back(gen.coin() ? Label::positive : Label::negative);
    }
    const ConfusionMatrix cm = confusion(preds, actual, Label::positive);
    EXPECT_EQ(cm.total(), n);
    const double p = precision(cm).value, r = recall(cm).value, f = f_measure(p, r);
    for (const double m : {accuracy(cm), p, r, f}) {
      EXPECT_GE(m, 0.0);
      EXPECT_LE(m, 1.0);
    }
    EXPECT_LE(f, std::max(p, r) + 1e-15);
    EXPECT_EQ(f == 0.0, p * r == 0.0);
    const ConfusionMatrix other = confusion(preds, actual, Label::negative);
    EXPECT_EQ(accuracy(other), accuracy(cm));
    EXPECT_EQ(other.tp, cm.tn);
    EXPECT_EQ(other.fp, cm.fn);
  }
}

TEST(MeanStd, PopulationDeviation) {
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  const MeanStd m = mean_std(v);
  EXPECT_DOUBLE_EQ(m.mean, 5.0);
  EXPECT_DOUBLE_EQ(m.stddev, 2.0);
}

MetricsReport sample_report() {
  MetricsReport r;
  r.dataset = "bgl";
  r.arch = "lstm";
  r.seed = 18446744073709551615ULL;
  r.config_hash = "0123456789abcdef";
  r.train_accuracy = {0.982, 0.01};
  r.validation_accuracy = {0.97, 0.02};
  r.train_loss = {0.09, 0.01};
  r.split_validation_accuracy = 0.95;
  r.folds = {{0.98, 0.1, 0.96}, {0.984, 0.08, 0.98}};
  const auto preds = labels({0, 0, 1, 1, 1, 0, 1});
  const auto actual = labels({0, 1, 1, 1, 1, 0, 1});
  fill_test_metrics(r, preds, actual);
  return r;
}

TEST(Report, FillTestMetrics) {
  const MetricsReport r = sample_report();
  EXPECT_EQ(r.test_size, 7u);
  EXPECT_NEAR(r.test_accuracy, 6.0 / 7.0, 1e-15);
  EXPECT_NEAR(r.majority_baseline, 5.0 / 7.0, 1e-15);
  EXPECT_EQ(r.labels[0].label, Label::negative);
  EXPECT_EQ(r.labels[0].counts, (ConfusionMatrix{2, 4, 1, 0}));
  EXPECT_NEAR(r.labels[0].precision.value, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(r.labels[1].recall.value, 0.8);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Report, UndefinedRatiosAreFlagged) {
  MetricsReport r;
  fill_test_metrics(r, labels({1, 1}), labels({1, 1}));
  EXPECT_TRUE(r.labels[0].precision.undefined);
  EXPECT_TRUE(r.labels[0].recall.undefined);
  EXPECT_EQ(r.warnings.size(), 2u);
  EXPECT_NE(render_table(r).find("warning"), std::string::npos);
}

TEST(Report, TableLayout) {
  const std::string table = render_table(sample_report());
  EXPECT_NE(table.find("98.2% (0.01)"), std::string::npos) << table;
  EXPECT_NE(table.find("0.09 (0.01)"), std::string::npos) << table;
  EXPECT_NE(table.find("85.7%"), std::string::npos) << table;
  const auto row0 = table.find("\nbgl");
  const auto row1 = table.find("\n ", row0 + 1);
  ASSERT_NE(row0, std::string::npos);
  ASSERT_NE(row1, std::string::npos);
  EXPECT_NE(table.substr(row0, row1 - row0).find(" 0 "), std::string::npos);
  EXPECT_NE(table.substr(row1).find(" 1 "), std::string::npos);
  for (const char* h : {"Avg Train Acc", "Avg Val Acc", "Avg Train Loss", "Test Acc", "Label",
                        "Precision", "Recall", "F-measure"}) {
    EXPECT_NE(table.find(h), std::string::npos) << h;
  }
}

TEST(Report, JsonRoundTrip) {
  const MetricsReport r = sample_report();
  const std::string json = to_json(r);
  EXPECT_EQ(metrics_from_json(json), r);
  EXPECT_EQ(to_json(metrics_from_json(json)), json);
  EXPECT_NE(json.find("\"config_hash\": \"0123456789abcdef\""), std::string::npos);
  EXPECT_NE(json.find("\"seed\": 18446744073709551615"), std::string::npos);
  EXPECT_THROW(metrics_from_json("{\"format\": \"other\"}"), std::exception);
}

TEST(Report, ConfusionCsv) {
  EXPECT_EQ(confusion_csv(sample_report()), "label,tp,tn,fp,fn\n0,2,4,1,0\n1,4,2,0,1\n");
  const RenderedReport both = render_report(sample_report());
  EXPECT_EQ(both.table, render_table(sample_report()));
  EXPECT_EQ(both.json, to_json(sample_report()));
}

}  // namespace
}  // namespace logad
