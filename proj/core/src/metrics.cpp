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

#include "logad/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace logad {
namespace {

using nlohmann::json;

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * v);
  return buf;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

json mean_std_json(const MeanStd& m) { return {{"mean", m.mean}, {"stddev", m.stddev}}; }

MeanStd mean_std_from(const json& j) {
  return {j.at("mean").get<double>(), j.at("stddev").get<double>()};
}

bool same_ratio(const Ratio& a, const Ratio& b) {
  return a.value == b.value && a.undefined == b.undefined;
}

}  // namespace

ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> actuals,
                          Label positive) {
  if (predictions.size() != actuals.size()) {
    throw std::invalid_argument("confusion: predictions and actuals differ in length");
  }
  if (predictions.empty()) {
    throw std::invalid_argument("confusion: no predictions");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const bool predicted = predictions[i] == positive;
    const bool actual = actuals[i] == positive;
    if (predicted && actual) {
      ++cm.tp;
    } else if (!predicted && !actual) {
      ++cm.tn;
    } else if (predicted) {
      ++cm.fp;
    } else {
      ++cm.fn;
    }
  }
  return cm;
}

double accuracy(const ConfusionMatrix& cm) {
  if (cm.total() == 0) {
    throw std::domain_error("accuracy: empty confusion matrix");
  }
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

Ratio precision(const ConfusionMatrix& cm) {
  const std::uint64_t denom = cm.tp + cm.fp;
  if (denom == 0) return {0.0, true};
  return {static_cast<double>(cm.tp) / static_cast<double>(denom), false};
}

Ratio recall(const ConfusionMatrix& cm) {
  const std::uint64_t denom = cm.tp + cm.fn;
  if (denom == 0) return {0.0, true};
  return {static_cast<double>(cm.tp) / static_cast<double>(denom), false};
}

double f_measure(double p, double r) {
  const double sum = p + r;
  return sum > 0.0 ? 2.0 * p * r / sum : 0.0;
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) {
    return out;
  }
  double sum = 0.0;
  for (const double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (const double v : values) sq += (v - out.mean) * (v - out.mean);
  out.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  return out;
}

bool MetricsReport::operator==(const MetricsReport& o) const {
  auto same_ms = [](const MeanStd& a, const MeanStd& b) {
    return a.mean == b.mean && a.stddev == b.stddev;
  };
  if (dataset != o.dataset || arch != o.arch || seed != o.seed || config_hash != o.config_hash ||
      !same_ms(train_accuracy, o.train_accuracy) ||
      !same_ms(validation_accuracy, o.validation_accuracy) ||
      !same_ms(train_loss, o.train_loss) ||
      split_validation_accuracy != o.split_validation_accuracy || folds != o.folds ||
      test_size != o.test_size || test_accuracy != o.test_accuracy ||
      majority_baseline != o.majority_baseline || warnings != o.warnings) {
    return false;
  }
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const LabelMetrics& a = labels[k];
    const LabelMetrics& b = o.labels[k];
    if (a.label != b.label || a.counts != b.counts || !same_ratio(a.precision, b.precision) ||
        !same_ratio(a.recall, b.recall) || a.f_measure != b.f_measure) {
      return false;
    }
  }
  return true;
}

void fill_test_metrics(MetricsReport& report, std::span<const Label> predictions,
                       std::span<const Label> actuals) {
  report.test_size = predictions.size();
  report.warnings.clear();
  std::uint64_t positives = 0;
  for (const Label a : actuals) positives += a == Label::positive ? 1 : 0;
  for (const Label label : {Label::negative, Label::positive}) {
    LabelMetrics& m = report.labels[static_cast<std::size_t>(to_int(label))];
    m.label = label;
    m.counts = confusion(predictions, actuals, label);
    m.precision = precision(m.counts);
    m.recall = recall(m.counts);
    m.f_measure = f_measure(m.precision.value, m.recall.value);
    const std::string tag = "label " + std::to_string(to_int(label));
    if (m.precision.undefined) {
      report.warnings.push_back(tag + ": precision undefined (no predictions of this label), "
                                      "reported as 0");
    }
    if (m.recall.undefined) {
      report.warnings.push_back(tag + ": recall undefined (no test examples of this label), "
                                      "reported as 0");
    }
  }
  report.test_accuracy = accuracy(report.labels[1].counts);
  const double n = static_cast<double>(actuals.size());
  const double pos = static_cast<double>(positives);
  report.majority_baseline = std::max(pos, n - pos) / n;
}

std::string render_table(const MetricsReport& r) {
  constexpr std::size_t kW[] = {13, 16, 16, 15, 10, 7, 11, 9, 9};
  const char* headers[] = {"Data set",  "Avg Train Acc", "Avg Val Acc", "Avg Train Loss",
                           "Test Acc",  "Label",         "Precision",   "Recall",
                           "F-measure"};
  std::ostringstream out;
  out << "Model: " << r.arch << "  (seed " << r.seed << ", config " << r.config_hash << ")\n";
  std::string line;
  for (std::size_t c = 0; c < 9; ++c) line += pad(headers[c], kW[c]);
  out << line << '\n' << std::string(line.size(), '-') << '\n';

  auto with_sd = [](const std::string& value, double sd) { return value + " (" + fixed2(sd) + ")"; };
  for (std::size_t k = 0; k < 2; ++k) {
    const LabelMetrics& m = r.labels[k];
    std::string row;
    if (k == 0) {
      row += pad(r.dataset, kW[0]);
      row += pad(with_sd(percent(r.train_accuracy.mean), r.train_accuracy.stddev), kW[1]);
      row += pad(with_sd(percent(r.validation_accuracy.mean), r.validation_accuracy.stddev), kW[2]);
      row += pad(with_sd(fixed2(r.train_loss.mean), r.train_loss.stddev), kW[3]);
      row += pad(percent(r.test_accuracy), kW[4]);
    } else {
      std::size_t blank = 0;
      for (std::size_t c = 0; c < 5; ++c) blank += kW[c];
      row += std::string(blank, ' ');
    }
    row += pad(std::to_string(to_int(m.label)), kW[5]);
    row += pad(percent(m.precision.value) + (m.precision.undefined ? "*" : ""), kW[6]);
    row += pad(percent(m.recall.value) + (m.recall.undefined ? "*" : ""), kW[7]);
    row += percent(m.f_measure);
    out << row << '\n';
  }
  for (const auto& w : r.warnings) {
    out << "* warning: " << w << '\n';
  }
  return out.str();
}

std::string to_json(const MetricsReport& r) {
  json folds = json::array();
  for (const auto& f : r.folds) {
    folds.push_back({{"train_accuracy", f.train_accuracy},
                     {"train_loss", f.train_loss},
                     {"heldout_accuracy", f.heldout_accuracy}});
  }
  json labels = json::array();
  for (const auto& m : r.labels) {
    labels.push_back({{"label", to_int(m.label)},
                      {"tp", m.counts.tp},
                      {"tn", m.counts.tn},
                      {"fp", m.counts.fp},
                      {"fn", m.counts.fn},
                      {"precision", m.precision.value},
                      {"precision_undefined", m.precision.undefined},
                      {"recall", m.recall.value},
                      {"recall_undefined", m.recall.undefined},
                      {"f_measure", m.f_measure}});
  }
  const json doc = {
      {"format", "logad-metrics"},
      {"version", 1},
      {"dataset", r.dataset},
      {"arch", r.arch},
      {"seed", r.seed},
      {"config_hash", r.config_hash},
      {"cv",
       {{"train_accuracy", mean_std_json(r.train_accuracy)},
        {"validation_accuracy", mean_std_json(r.validation_accuracy)},
        {"train_loss", mean_std_json(r.train_loss)},
        {"split_validation_accuracy", r.split_validation_accuracy},
        {"folds", folds}}},
      {"test",
       {{"size", r.test_size},
        {"accuracy", r.test_accuracy},
        {"majority_baseline", r.majority_baseline},
        {"labels", labels}}},
      {"warnings", r.warnings},
  };
  return doc.dump(2) + "\n";
}

MetricsReport metrics_from_json(std::string_view text) {
  const json doc = json::parse(text);
  if (doc.at("format") != "logad-metrics" || doc.at("version") != 1) {
    throw std::runtime_error("not a logad-metrics v1 document");
  }
  MetricsReport r;
  r.dataset = doc.at("dataset").get<std::string>();
  r.arch = doc.at("arch").get<std::string>();
  r.seed = doc.at("seed").get<std::uint64_t>();
  r.config_hash = doc.at("config_hash").get<std::string>();
  const json& cv = doc.at("cv");
  r.train_accuracy = mean_std_from(cv.at("train_accuracy"));
  r.validation_accuracy = mean_std_from(cv.at("validation_accuracy"));
  r.train_loss = mean_std_from(cv.at("train_loss"));
  r.split_validation_accuracy = cv.at("split_validation_accuracy").get<double>();
  for (const auto& f : cv.at("folds")) {
    r.folds.push_back({f.at("train_accuracy").get<double>(), f.at("train_loss").get<double>(),
                       f.at("heldout_accuracy").get<double>()});
  }
  const json& test = doc.at("test");
  r.test_size = test.at("size").get<std::uint64_t>();
  r.test_accuracy = test.at("accuracy").get<double>();
  r.majority_baseline = test.at("majority_baseline").get<double>();
  const json& labels = test.at("labels");
  if (labels.size() != 2) {
    throw std::runtime_error("metrics document must hold exactly two label rows");
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const json& l = labels[k];
    LabelMetrics& m = r.labels[k];
    m.label = label_from_int(l.at("label").get<long>());
    m.counts = {l.at("tp").get<std::uint64_t>(), l.at("tn").get<std::uint64_t>(),
                l.at("fp").get<std::uint64_t>(), l.at("fn").get<std::uint64_t>()};
    m.precision = {l.at("precision").get<double>(), l.at("precision_undefined").get<bool>()};
    m.recall = {l.at("recall").get<double>(), l.at("recall_undefined").get<bool>()};
    m.f_measure = l.at("f_measure").get<double>();
  }
  r.warnings = doc.at("warnings").get<std::vector<std::string>>();
  return r;
}

std::string confusion_csv(const MetricsReport& r) {
  std::ostringstream out;
  out << "label,tp,tn,fp,fn\n";
  for (const auto& m : r.labels) {
    out << to_int(m.label) << ',' << m.counts.tp << ',' << m.counts.tn << ',' << m.counts.fp << ','
        << m.counts.fn << '\n';
  }
  return out.str();
}

RenderedReport render_report(const MetricsReport& report) {
  return {render_table(report), to_json(report)};
}

}  // namespace logad
