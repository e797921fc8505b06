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


#include "logad/classifier_training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

#include "logad/autoencoder.hpp"

namespace logad {
namespace {

using nlohmann::json;

std::vector<const LabeledExample*> pointers(std::span<const LabeledExample> data) {
  std::vector<const LabeledExample*> out;
  out.reserve(data.size());
  for (const auto& e : data) out.push_back(&e);
  return out;
}

Label argmax(const Matrix& probs, Eigen::Index col) {
  return probs(1, col) > probs(0, col) ? Label::positive : Label::negative;
}

std::size_t count_correct(const ClassifierCache& cache) {
  std::size_t correct = 0;
  for (std::size_t b = 0; b < cache.batch; ++b) {
    correct += argmax(cache.probabilities, static_cast<Eigen::Index>(b)) == cache.labels[b];
  }
  return correct;
}

bool clip_gradients(ClassifierParams& grads, double max_norm) {
  if (!(max_norm > 0.0)) return false;
  const double norm = std::sqrt(squared_norm(std::as_const(grads).params()));
  if (!(norm > max_norm)) return false;
  const double scale = max_norm / norm;
  for (Matrix* g : grads.params()) *g *= scale;
  return true;
}

}  // namespace

void ClfTrainConfig::validate() const {
  if (folds < 2) throw std::invalid_argument("classifier config: folds must be at least 2");
  if (hidden < 1) throw std::invalid_argument("classifier config: hidden must be at least 1");
  if (embedding_dim < 1) {
    throw std::invalid_argument("classifier config: embedding_dim must be at least 1");
  }
  if (batch_size < 1) throw std::invalid_argument("classifier config: batch_size must be >= 1");
  if (max_epochs < 1) throw std::invalid_argument("classifier config: max_epochs must be >= 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw std::invalid_argument("classifier config: dropout must lie in [0, 1)");
  }
}

std::pair<std::size_t, std::size_t> fold_bounds(std::size_t n, std::size_t folds, std::size_t k) {
  if (folds == 0 || k >= folds) throw std::out_of_range("fold index out of range");
  return {k * n / folds, (k + 1) * n / folds};
}

Evaluation evaluate_classifier(const ClassifierParams& params,
                               std::span<const LabeledExample> data, std::size_t batch_size) {
  if (data.empty()) throw std::invalid_argument("evaluate_classifier: no data");
  batch_size = std::max<std::size_t>(batch_size, 1);
  const std::vector<const LabeledExample*> ptrs = pointers(data);
  Evaluation out;
  out.predictions.reserve(data.size());
  double loss = 0.0;
  std::size_t correct = 0;
  for (std::size_t start = 0; start < ptrs.size(); start += batch_size) {
    const std::size_t end = std::min(ptrs.size(), start + batch_size);
    const ClassifierCache cache = classify_forward(
        params, std::span<const LabeledExample* const>(ptrs).subspan(start, end - start));
    loss += classifier_loss(cache) * static_cast<double>(end - start);
    correct += count_correct(cache);
    for (std::size_t b = 0; b < cache.batch; ++b) {
      out.predictions.push_back(argmax(cache.probabilities, static_cast<Eigen::Index>(b)));
    }
  }
  const double n = static_cast<double>(data.size());
  out.loss = loss / n;
  out.accuracy = static_cast<double>(correct) / n;
  return out;
}

FitResult fit_classifier(std::span<const LabeledExample> train,
                         std::span<const LabeledExample> heldout, Arch arch,
                         std::size_t vocab_size, const ClfTrainConfig& config, Rng& rng) {
  config.validate();
  if (train.empty() || heldout.empty()) {
    throw std::invalid_argument("fit_classifier: train and held-out sets must be non-empty");
  }
  Rng init_rng = rng.derive(1);
  Rng order_rng = rng.derive(2);
  Rng dropout_rng = rng.derive(3);

  FitResult result;
  result.params =
      init_classifier(arch, vocab_size, config.embedding_dim, config.hidden, init_rng);
  ClassifierParams& params = result.params;
  AdamState adam = AdamState::for_params(std::as_const(params).params(), config.adam);

  std::vector<const LabeledExample*> order = pointers(train);
  ClassifierParams best = params;
  double best_loss = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;
  const std::size_t stop_after = std::max<std::size_t>(config.patience, 1);

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    seeded_shuffle(order, order_rng);
    double weighted_loss = 0.0;
    std::size_t correct = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const Matrix mask = make_feature_dropout(params, end - start, config.dropout, dropout_rng);
      const ClassifierCache cache = classify_forward(
          params, std::span<const LabeledExample* const>(order).subspan(start, end - start), mask);
      const double loss = classifier_loss(cache);
      if (!std::isfinite(loss)) {
        throw DivergenceError("classifier training loss is not finite", epoch);
      }
      weighted_loss += loss * static_cast<double>(end - start);
      correct += count_correct(cache);
      ClassifierParams grads = classify_backward(params, cache);
      if (clip_gradients(grads, config.clip_norm)) ++result.clip_events;
      adam_step(params.params(), std::as_const(grads).params(), adam);
    }
    const Evaluation held = evaluate_classifier(params, heldout, config.batch_size);
    if (!std::isfinite(held.loss)) {
      throw DivergenceError("classifier held-out loss is not finite", epoch);
    }
    const double n = static_cast<double>(order.size());
    result.log.push_back(
        {epoch, weighted_loss / n, static_cast<double>(correct) / n, held.loss, held.accuracy});
    if (held.loss < best_loss) {
      best_loss = held.loss;
      best = params;
      result.best_epoch = epoch;
      since_best = 0;
    } else {
      ++since_best;
    }
    if (since_best >= stop_after) {
      result.stopped_early = true;
      break;
    }
  }
  result.params = std::move(best);
  return result;
}

TrainedClassifier train_classifier(std::span<const LabeledExample> train,
                                   std::span<const LabeledExample> validation, Arch arch,
                                   std::size_t vocab_size, const ClfTrainConfig& config) {
  config.validate();
  if (config.folds > train.size()) {
    throw std::invalid_argument("train_classifier: " + std::to_string(config.folds) +
                                " folds but only " + std::to_string(train.size()) +
                                " training examples");
  }
  if (validation.empty()) {
    throw std::invalid_argument("train_classifier: empty validation set");
  }

  const Rng root(config.seed);
  TrainedClassifier out;
  out.report.arch = arch;
  ClassifierParams selected;
  double selected_accuracy = -1.0;

  for (std::size_t k = 0; k < config.folds; ++k) {
    const auto [lo, hi] = fold_bounds(train.size(), config.folds, k);
    std::vector<LabeledExample> fold_train;
    fold_train.reserve(train.size() - (hi - lo));
    fold_train.insert(fold_train.end(), train.begin(), train.begin() + static_cast<std::ptrdiff_t>(lo));
    fold_train.insert(fold_train.end(), train.begin() + static_cast<std::ptrdiff_t>(hi), train.end());
    const std::span<const LabeledExample> heldout = train.subspan(lo, hi - lo);

    Rng fold_rng = root.derive(100 + k);
    FitResult fit = fit_classifier(fold_train, heldout, arch, vocab_size, config, fold_rng);
    const ClfEpochLog& best = fit.log[fit.best_epoch - 1];

    FoldResult fr;
    fr.fold = k;
    fr.train_size = fold_train.size();
    fr.heldout_size = heldout.size();
    fr.epochs_run = fit.log.size();
    fr.best_epoch = fit.best_epoch;
    fr.train_accuracy = best.train_accuracy;
    fr.train_loss = best.train_loss;
    fr.heldout_accuracy = best.heldout_accuracy;
    fr.heldout_loss = best.heldout_loss;
    fr.clip_events = fit.clip_events;
    out.report.folds.push_back(fr);
    out.report.clip_events += fit.clip_events;

    if (fr.heldout_accuracy > selected_accuracy) {
      selected_accuracy = fr.heldout_accuracy;
      out.report.selected_fold = k;
      selected = std::move(fit.params);
    }
  }

  std::vector<double> train_acc, train_loss, held_acc;
  for (const auto& f : out.report.folds) {
    train_acc.push_back(f.train_accuracy);
    train_loss.push_back(f.train_loss);
    held_acc.push_back(f.heldout_accuracy);
  }
  out.report.train_accuracy = mean_std(train_acc);
  out.report.train_loss = mean_std(train_loss);
  out.report.heldout_accuracy = mean_std(held_acc);

  const Evaluation val = evaluate_classifier(selected, validation, config.batch_size);
  out.report.validation_accuracy = val.accuracy;
  out.report.validation_loss = val.loss;
  out.params = std::move(selected);
  return out;
}

std::string CvReport::to_json() const {
  json folds_json = json::array();
  for (const auto& f : folds) {
    folds_json.push_back({{"fold", f.fold},
                          {"train_size", f.train_size},
                          {"heldout_size", f.heldout_size},
                          {"epochs_run", f.epochs_run},
                          {"best_epoch", f.best_epoch},
                          {"train_accuracy", f.train_accuracy},
                          {"train_loss", f.train_loss},
                          {"heldout_accuracy", f.heldout_accuracy},
                          {"heldout_loss", f.heldout_loss},
                          {"clip_events", f.clip_events}});
  }
  auto ms = [](const MeanStd& m) { return json{{"mean", m.mean}, {"stddev", m.stddev}}; };
  const json doc = {{"format", "logad-cv-report"},
                    {"version", 1},
                    {"arch", std::string(to_string(arch))},
                    {"folds", folds_json},
                    {"train_accuracy", ms(train_accuracy)},
                    {"train_loss", ms(train_loss)},
                    {"heldout_accuracy", ms(heldout_accuracy)},
                    {"selected_fold", selected_fold},
                    {"validation_accuracy", validation_accuracy},
                    {"validation_loss", validation_loss},
                    {"clip_events", clip_events}};
  return doc.dump(2) + "\n";
}

CvReport CvReport::from_json(std::string_view text) {
  const json doc = json::parse(text);
  if (doc.at("format") != "logad-cv-report" || doc.at("version") != 1) {
    throw std::runtime_error("not a logad-cv-report v1 document");
  }
  auto ms = [](const json& j) {
    return MeanStd{j.at("mean").get<double>(), j.at("stddev").get<double>()};
  };
  CvReport r;
  r.arch = arch_from_string(doc.at("arch").get<std::string>());
  for (const auto& f : doc.at("folds")) {
    FoldResult fr;
    fr.fold = f.at("fold").get<std::size_t>();
    fr.train_size = f.at("train_size").get<std::size_t>();
    fr.heldout_size = f.at("heldout_size").get<std::size_t>();
    fr.epochs_run = f.at("epochs_run").get<std::size_t>();
    fr.best_epoch = f.at("best_epoch").get<std::size_t>();
    fr.train_accuracy = f.at("train_accuracy").get<double>();
    fr.train_loss = f.at("train_loss").get<double>();
    fr.heldout_accuracy = f.at("heldout_accuracy").get<double>();
    fr.heldout_loss = f.at("heldout_loss").get<double>();
    fr.clip_events = f.at("clip_events").get<std::size_t>();
    r.folds.push_back(fr);
  }
  r.train_accuracy = ms(doc.at("train_accuracy"));
  r.train_loss = ms(doc.at("train_loss"));
  r.heldout_accuracy = ms(doc.at("heldout_accuracy"));
  r.selected_fold = doc.at("selected_fold").get<std::size_t>();
  r.validation_accuracy = doc.at("validation_accuracy").get<double>();
  r.validation_loss = doc.at("validation_loss").get<double>();
  r.clip_events = doc.at("clip_events").get<std::size_t>();
  return r;
}

}  // namespace logad
