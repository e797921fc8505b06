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


#include "logad/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "logad/checkpoint.hpp"
#include "logad/metrics.hpp"

namespace logad {
namespace fs = std::filesystem;
namespace {

using nlohmann::json;

constexpr const char* kPreprocess = "preprocess";
constexpr const char* kTrainAe = "train-ae";
constexpr const char* kAssemble = "assemble";
constexpr const char* kTrainEval = "train-eval";

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw std::invalid_argument(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw std::invalid_argument("unknown config key '" + where + key + "'");
    }
  }
}

template <class T>
void read_opt(const json& obj, const char* key, T& field) {
  if (const auto it = obj.find(key); it != obj.end()) field = it->get<T>();
}

json adam_json(const AdamOptions& a) {
  return {{"learning_rate", a.learning_rate},
          {"beta1", a.beta1},
          {"beta2", a.beta2},
          {"epsilon", a.epsilon}};
}

void read_adam(const json& obj, AdamOptions& a) {
  read_opt(obj, "learning_rate", a.learning_rate);
  read_opt(obj, "beta1", a.beta1);
  read_opt(obj, "beta2", a.beta2);
  read_opt(obj, "epsilon", a.epsilon);
}

json ae_json(const AeTrainConfig& c) {
  json j = {{"hidden", c.hidden},
            {"batch_size", c.batch_size},
            {"max_epochs", c.max_epochs},
            {"dropout", c.dropout},
            {"patience", c.patience},
            {"validation_fraction", c.validation_fraction},
            {"l1", c.l1}};
  j.update(adam_json(c.adam));
  return j;
}

json clf_json(const ClfTrainConfig& c) {
  json j = {{"hidden", c.hidden},
            {"embedding_dim", c.embedding_dim},
            {"folds", c.folds},
            {"batch_size", c.batch_size},
            {"max_epochs", c.max_epochs},
            {"dropout", c.dropout},
            {"patience", c.patience},
            {"clip_norm", c.clip_norm}};
  j.update(adam_json(c.adam));
  return j;
}

std::string hash_of(const json& doc) { return fnv1a64_hex(doc.dump()); }

std::string absolute_string(const fs::path& p) {
  return p.empty() ? std::string() : fs::absolute(p).lexically_normal().string();
}

std::uint64_t stream_seed(const RunConfig& config, std::uint64_t stream) {
  return Rng(*config.seed).derive(stream).next_u64();
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

enum class Freshness { absent, current, stale };

struct ManifestState {
  Freshness freshness = Freshness::absent;
  std::string found_hash;
};

ManifestState inspect(const fs::path& manifest, const std::string& expected,
                      std::initializer_list<fs::path> outputs) {
  ManifestState state;
  if (!fs::exists(manifest)) return state;
  state.found_hash = json::parse(read_text(manifest)).at("config_hash").get<std::string>();
  if (state.found_hash != expected) {
    state.freshness = Freshness::stale;
    return state;
  }
  const bool complete =
      std::all_of(outputs.begin(), outputs.end(), [](const fs::path& p) { return fs::exists(p); });
  state.freshness = complete ? Freshness::current : Freshness::absent;
  return state;
}

/// Returns true when the stage can be skipped.
bool up_to_date(const char* stage, const fs::path& manifest, const std::string& expected,
                std::initializer_list<fs::path> outputs, bool force, std::ostream& log) {
  const ManifestState state = inspect(manifest, expected, outputs);
  if (force) return false;
  if (state.freshness == Freshness::current) {
    log << stage << ": up to date (config " << expected << ")\n";
    return true;
  }
  if (state.freshness == Freshness::stale) {
    throw StageError(stage, "existing outputs in " + manifest.parent_path().string() +
                                " were produced by config " + state.found_hash +
                                ", current config is " + expected + "; pass --force to overwrite");
  }
  return false;
}

void require_upstream(const char* stage, const char* upstream, const fs::path& manifest,
                      const std::string& expected, bool force) {
  if (!fs::exists(manifest)) {
    throw StageError(stage, "missing input " + manifest.string() + " (run " + upstream +
                                " first)");
  }
  const std::string found =
      json::parse(read_text(manifest)).at("config_hash").get<std::string>();
  if (found != expected && !force) {
    throw StageError(stage, std::string("inputs from ") + upstream + " carry config " + found +
                                ", expected " + expected + "; rerun " + upstream +
                                " or pass --force");
  }
}

void require_hash(const char* stage, const fs::path& artifact, const std::string& found,
                  const std::string& expected, bool force) {
  if (found != expected && !force) {
    throw StageError(stage, artifact.string() + " carries config " + found + ", expected " +
                                expected + "; pass --force to use it anyway");
  }
}

template <class Fn>
auto run_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

std::string ae_log_csv(const AeTrainResult& r) {
  std::string out = "epoch,train_loss,validation_loss,best_validation_loss\n";
  for (const auto& e : r.log) {
    out += std::to_string(e.epoch) + ',' + num(e.train_loss) + ',' + num(e.validation_loss) +
           ',' + num(e.best_validation_loss) + '\n';
  }
  return out;
}

}  // namespace

std::size_t RunConfig::effective_length() const {
  return sequence_length != 0 ? sequence_length : default_sequence_length(dataset);
}

SplitSpec RunConfig::effective_split() const {
  return split.value_or(SplitSpec::for_dataset(dataset));
}

void RunConfig::validate() const {
  if (!seed) {
    throw std::invalid_argument("seed is required (set \"seed\" in the config or pass --seed)");
  }
  if (input.empty()) {
    throw std::invalid_argument("input path is required (set \"input\" or pass --input)");
  }
  if (out.empty()) throw std::invalid_argument("output directory must not be empty");
  if (!(noise_variance >= 0.0)) {
    throw std::invalid_argument("noise_variance must be non-negative");
  }
  autoencoder.validate();
  classifier.validate();
  effective_split().validate();
}

RunConfig RunConfig::from_json(std::string_view text, const fs::path& base_dir) {
  const json doc = json::parse(text);
  reject_unknown(doc,
                 {"dataset", "input", "label_file", "sequence_length", "min_tokens", "arch",
                  "seed", "out", "noise_variance", "split", "autoencoder", "classifier"},
                 "");
  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  RunConfig c;
  if (doc.contains("dataset")) c.dataset = dataset_kind_from_string(doc["dataset"].get<std::string>());
  if (doc.contains("input")) c.input = resolve(doc["input"].get<std::string>());
  if (doc.contains("label_file")) c.label_file = resolve(doc["label_file"].get<std::string>());
  if (doc.contains("out")) c.out = resolve(doc["out"].get<std::string>());
  if (doc.contains("arch")) c.arch = arch_from_string(doc["arch"].get<std::string>());
  if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
  read_opt(doc, "sequence_length", c.sequence_length);
  read_opt(doc, "min_tokens", c.min_tokens);
  read_opt(doc, "noise_variance", c.noise_variance);
  if (doc.contains("split")) {
    const json& s = doc["split"];
    reject_unknown(s, {"test_fraction", "train_fraction"}, "split.");
    SplitSpec spec = SplitSpec::for_dataset(c.dataset);
    read_opt(s, "test_fraction", spec.test_fraction);
    read_opt(s, "train_fraction", spec.train_fraction);
    c.split = spec;
  }
  if (doc.contains("autoencoder")) {
    const json& a = doc["autoencoder"];
    reject_unknown(a,
                   {"hidden", "batch_size", "max_epochs", "dropout", "patience",
                    "validation_fraction", "l1", "learning_rate", "beta1", "beta2", "epsilon"},
                   "autoencoder.");
    read_opt(a, "hidden", c.autoencoder.hidden);
    read_opt(a, "batch_size", c.autoencoder.batch_size);
    read_opt(a, "max_epochs", c.autoencoder.max_epochs);
    read_opt(a, "dropout", c.autoencoder.dropout);
    read_opt(a, "patience", c.autoencoder.patience);
    read_opt(a, "validation_fraction", c.autoencoder.validation_fraction);
    read_opt(a, "l1", c.autoencoder.l1);
    read_adam(a, c.autoencoder.adam);
  }
  if (doc.contains("classifier")) {
    const json& k = doc["classifier"];
    reject_unknown(k,
                   {"hidden", "embedding_dim", "folds", "batch_size", "max_epochs", "dropout",
                    "patience", "clip_norm", "learning_rate", "beta1", "beta2", "epsilon"},
                   "classifier.");
    read_opt(k, "hidden", c.classifier.hidden);
    read_opt(k, "embedding_dim", c.classifier.embedding_dim);
    read_opt(k, "folds", c.classifier.folds);
    read_opt(k, "batch_size", c.classifier.batch_size);
    read_opt(k, "max_epochs", c.classifier.max_epochs);
    read_opt(k, "dropout", c.classifier.dropout);
    read_opt(k, "patience", c.classifier.patience);
    read_opt(k, "clip_norm", c.classifier.clip_norm);
    read_adam(k, c.classifier.adam);
  }
  return c;
}

std::string RunConfig::to_json() const {
  json doc = {{"dataset", std::string(to_string(dataset))},
              {"input", input.string()},
              {"sequence_length", effective_length()},
              {"min_tokens", min_tokens},
              {"arch", std::string(to_string(arch))},
              {"out", out.string()},
              {"noise_variance", noise_variance},
              {"split",
               {{"test_fraction", effective_split().test_fraction},
                {"train_fraction", effective_split().train_fraction}}},
              {"autoencoder", ae_json(autoencoder)},
              {"classifier", clf_json(classifier)}};
  if (label_file) doc["label_file"] = label_file->string();
  if (seed) doc["seed"] = *seed;
  return doc.dump(2) + "\n";
}

RunConfig load_run_config(const fs::path& path) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot read config file " + path.string());
  }
  try {
    return RunConfig::from_json(text, path.parent_path());
  } catch (const json::exception& e) {
    throw std::invalid_argument("config file " + path.string() + ": " + e.what());
  }
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

StageHashes stage_hashes(const RunConfig& c) {
  StageHashes h;
  json pre = {{"stage", kPreprocess},
              {"dataset", std::string(to_string(c.dataset))},
              {"input", absolute_string(c.input)},
              {"label_file", c.label_file ? absolute_string(*c.label_file) : std::string()},
              {"sequence_length", c.effective_length()},
              {"min_tokens", c.min_tokens},
              {"seed", c.seed.value_or(0)}};
  h.preprocess = hash_of(pre);
  h.autoencoder = hash_of({{"stage", kTrainAe}, {"upstream", h.preprocess},
                           {"autoencoder", ae_json(c.autoencoder)}});
  const SplitSpec split = c.effective_split();
  h.assemble = hash_of({{"stage", kAssemble},
                        {"upstream", h.autoencoder},
                        {"noise_variance", c.noise_variance},
                        {"test_fraction", split.test_fraction},
                        {"train_fraction", split.train_fraction}});
  h.train_eval = hash_of({{"stage", kTrainEval},
                          {"upstream", h.assemble},
                          {"arch", std::string(to_string(c.arch))},
                          {"classifier", clf_json(c.classifier)}});
  return h;
}

StageOutcome cmd_preprocess(const RunConfig& config, bool force, std::ostream& log) {
  return run_stage(kPreprocess, [&] {
    config.validate();
    const RunLayout layout{config.out};
    const StageHashes hashes = stage_hashes(config);
    if (up_to_date(kPreprocess, layout.preprocess_manifest(), hashes.preprocess,
                   {layout.vocabulary(), layout.encoded_positive(), layout.encoded_negative()},
                   force, log)) {
      return StageOutcome::skipped;
    }
    if (!fs::exists(config.input)) {
      throw StageError(kPreprocess, "input not found: " + config.input.string());
    }
    fs::create_directories(layout.root);

    PreprocessOptions options;
    options.sequence_length = config.effective_length();
    options.min_tokens = config.min_tokens;
    options.parse.label_file = config.label_file;
    Rng rng = Rng(*config.seed).derive(1);
    const PreprocessedCorpus corpus =
        preprocess_corpus(config.input, config.dataset, options, rng);
    if (corpus.positive.empty() || corpus.negative.empty()) {
      throw StageError(kPreprocess, "both classes need at least one record after filtering "
                                    "(positive " + std::to_string(corpus.positive.size()) +
                                        ", negative " + std::to_string(corpus.negative.size()) +
                                        ")");
    }

    corpus.vocabulary.save(layout.vocabulary());
    const std::size_t vocab = corpus.vocabulary.size();
    write_encoded(layout.encoded_positive(),
                  {options.sequence_length, vocab, hashes.preprocess, corpus.positive});
    write_encoded(layout.encoded_negative(),
                  {options.sequence_length, vocab, hashes.preprocess, corpus.negative});
    const json manifest = {{"stage", kPreprocess},
                           {"config_hash", hashes.preprocess},
                           {"parsed_records", corpus.parsed_records},
                           {"kept_records", corpus.kept_records},
                           {"positive", corpus.positive.size()},
                           {"negative", corpus.negative.size()},
                           {"vocab_size", vocab},
                           {"sequence_length", options.sequence_length}};
    write_text(layout.preprocess_manifest(), manifest.dump(2) + "\n");
    log << "preprocess: parsed " << corpus.parsed_records << " records, kept "
        << corpus.kept_records << "; label 1: " << corpus.positive.size()
        << ", label 0: " << corpus.negative.size() << "; vocabulary " << vocab << '\n';
    return StageOutcome::ran;
  });
}

StageOutcome cmd_train_ae(const RunConfig& config, bool force, std::ostream& log) {
  return run_stage(kTrainAe, [&] {
    config.validate();
    const RunLayout layout{config.out};
    const StageHashes hashes = stage_hashes(config);
    if (up_to_date(kTrainAe, layout.ae_manifest(), hashes.autoencoder,
                   {layout.ae_positive(), layout.ae_negative(), layout.ae_positive_log(),
                    layout.ae_negative_log()},
                   force, log)) {
      return StageOutcome::skipped;
    }
    require_upstream(kTrainAe, kPreprocess, layout.preprocess_manifest(), hashes.preprocess,
                     force);

    json manifest = {{"stage", kTrainAe}, {"config_hash", hashes.autoencoder}};
    struct Job {
      const char* name;
      fs::path data, checkpoint, loss_log;
      std::uint64_t stream;
    };
    const Job jobs[] = {
        {"positive", layout.encoded_positive(), layout.ae_positive(), layout.ae_positive_log(), 2},
        {"negative", layout.encoded_negative(), layout.ae_negative(), layout.ae_negative_log(), 3},
    };
    for (const Job& job : jobs) {
      const EncodedDataset data = read_encoded(job.data);
      require_hash(kTrainAe, job.data, data.config_hash, hashes.preprocess, force);
      AeTrainConfig ae = config.autoencoder;
      ae.seed = stream_seed(config, job.stream);
      AeTrainResult result;
      try {
        result = ae_train(data.rows, data.vocab_size, ae);
      } catch (const DivergenceError& e) {
        throw StageError(kTrainAe, std::string(job.name) + " autoencoder: " + e.what());
      }
      save_autoencoder(job.checkpoint, result.params,
                       {{"config_hash", hashes.autoencoder},
                        {"class", job.name},
                        {"vocab_size", std::to_string(data.vocab_size)}});
      write_text(job.loss_log, ae_log_csv(result));
      manifest[job.name] = {{"examples", data.rows.size()},
                            {"epochs_run", result.log.size()},
                            {"best_epoch", result.best_epoch},
                            {"best_validation_loss", result.log[result.best_epoch - 1].validation_loss},
                            {"stopped_early", result.stopped_early}};
      log << "train-ae: " << job.name << " autoencoder, " << data.rows.size() << " sequences, "
          << result.log.size() << " epochs, best validation loss "
          << num(result.log[result.best_epoch - 1].validation_loss) << " at epoch "
          << result.best_epoch << '\n';
    }
    write_text(layout.ae_manifest(), manifest.dump(2) + "\n");
    return StageOutcome::ran;
  });
}

StageOutcome cmd_assemble(const RunConfig& config, bool force, std::ostream& log) {
  return run_stage(kAssemble, [&] {
    config.validate();
    const RunLayout layout{config.out};
    const StageHashes hashes = stage_hashes(config);
    if (up_to_date(kAssemble, layout.assemble_manifest(), hashes.assemble,
                   {layout.train_split(), layout.validation_split(), layout.test_split()}, force,
                   log)) {
      return StageOutcome::skipped;
    }
    require_upstream(kAssemble, kTrainAe, layout.ae_manifest(), hashes.autoencoder, force);

    const EncodedDataset pos_data = read_encoded(layout.encoded_positive());
    const EncodedDataset neg_data = read_encoded(layout.encoded_negative());
    require_hash(kAssemble, layout.encoded_positive(), pos_data.config_hash, hashes.preprocess,
                 force);
    require_hash(kAssemble, layout.encoded_negative(), neg_data.config_hash, hashes.preprocess,
                 force);
    std::map<std::string, std::string> pos_meta, neg_meta;
    const AutoencoderParams pos_ae = load_autoencoder(layout.ae_positive(), &pos_meta);
    const AutoencoderParams neg_ae = load_autoencoder(layout.ae_negative(), &neg_meta);
    require_hash(kAssemble, layout.ae_positive(), pos_meta["config_hash"], hashes.autoencoder,
                 force);
    require_hash(kAssemble, layout.ae_negative(), neg_meta["config_hash"], hashes.autoencoder,
                 force);

    const std::size_t vocab = pos_data.vocab_size;
    const std::vector<FeatureSequence> pos_feats =
        ae_extract(pos_ae, pos_data.rows, vocab, Label::positive);
    const std::vector<FeatureSequence> neg_feats =
        ae_extract(neg_ae, neg_data.rows, vocab, Label::negative);

    Rng noise_rng = Rng(*config.seed).derive(4);
    std::vector<LabeledExample> assembled =
        assemble(pos_feats, neg_feats, vocab, config.noise_variance, noise_rng);
    const std::size_t assembled_size = assembled.size();
    Rng split_rng = Rng(*config.seed).derive(5);
    const DataSplit parts = split(std::move(assembled), config.effective_split(), split_rng);

    const std::size_t length = pos_data.length;
    write_encoded(layout.train_split(), {length, vocab, hashes.assemble, parts.train});
    write_encoded(layout.validation_split(), {length, vocab, hashes.assemble, parts.validation});
    write_encoded(layout.test_split(), {length, vocab, hashes.assemble, parts.test});
    const json manifest = {{"stage", kAssemble},
                           {"config_hash", hashes.assemble},
                           {"positive_features", pos_feats.size()},
                           {"negative_features", neg_feats.size()},
                           {"assembled", assembled_size},
                           {"duplicates_removed", pos_feats.size() + neg_feats.size() - assembled_size},
                           {"train", parts.train.size()},
                           {"validation", parts.validation.size()},
                           {"test", parts.test.size()}};
    write_text(layout.assemble_manifest(), manifest.dump(2) + "\n");
    log << "assemble: " << assembled_size << " examples ("
        << pos_feats.size() + neg_feats.size() - assembled_size << " duplicates removed); train "
        << parts.train.size() << ", validation " << parts.validation.size() << ", test "
        << parts.test.size() << '\n';
    return StageOutcome::ran;
  });
}

StageOutcome cmd_train_eval(const RunConfig& config, bool force, std::ostream& log) {
  return run_stage(kTrainEval, [&] {
    config.validate();
    const RunLayout layout{config.out};
    const StageHashes hashes = stage_hashes(config);
    const Arch arch = config.arch;
    if (up_to_date(kTrainEval, layout.train_eval_manifest(arch), hashes.train_eval,
                   {layout.classifier(arch), layout.cv_report(arch), layout.metrics_json(arch),
                    layout.metrics_table(arch), layout.confusion(arch)},
                   force, log)) {
      return StageOutcome::skipped;
    }
    require_upstream(kTrainEval, kAssemble, layout.assemble_manifest(), hashes.assemble, force);

    const EncodedDataset train = read_encoded(layout.train_split());
    const EncodedDataset validation = read_encoded(layout.validation_split());
    const EncodedDataset test = read_encoded(layout.test_split());
    for (const auto* part : {&train, &validation, &test}) {
      require_hash(kTrainEval, layout.root, part->config_hash, hashes.assemble, force);
    }

    ClfTrainConfig clf = config.classifier;
    clf.seed = stream_seed(config, 6);
    TrainedClassifier trained;
    try {
      trained = train_classifier(train.rows, validation.rows, arch, train.vocab_size, clf);
    } catch (const DivergenceError& e) {
      throw StageError(kTrainEval, std::string(to_string(arch)) + " classifier: " + e.what());
    }
    const CvReport& cv = trained.report;
    const Evaluation scored = evaluate_classifier(trained.params, test.rows, clf.batch_size);

    MetricsReport report;
    report.dataset = std::string(to_string(config.dataset));
    report.arch = std::string(to_string(arch));
    report.seed = *config.seed;
    report.config_hash = hashes.train_eval;
    report.train_accuracy = cv.train_accuracy;
    report.validation_accuracy = cv.heldout_accuracy;
    report.train_loss = cv.train_loss;
    report.split_validation_accuracy = cv.validation_accuracy;
    for (const auto& f : cv.folds) {
      report.folds.push_back({f.train_accuracy, f.train_loss, f.heldout_accuracy});
    }
    std::vector<Label> actual;
    actual.reserve(test.rows.size());
    for (const auto& row : test.rows) actual.push_back(row.label);
    fill_test_metrics(report, scored.predictions, actual);
    if (cv.clip_events > 0) {
      report.warnings.push_back("gradient norm clipped in " + std::to_string(cv.clip_events) +
                                " of the training steps");
    }

    fs::create_directories(layout.arch_dir(arch));
    save_classifier(layout.classifier(arch), trained.params,
                    {{"config_hash", hashes.train_eval},
                     {"selected_fold", std::to_string(cv.selected_fold)}});
    write_text(layout.cv_report(arch), cv.to_json());
    std::string folds_csv =
        "fold,train_size,heldout_size,epochs_run,best_epoch,train_accuracy,train_loss,"
        "heldout_accuracy,heldout_loss,clip_events\n";
    for (const auto& f : cv.folds) {
      folds_csv += std::to_string(f.fold) + ',' + std::to_string(f.train_size) + ',' +
                   std::to_string(f.heldout_size) + ',' + std::to_string(f.epochs_run) + ',' +
                   std::to_string(f.best_epoch) + ',' + num(f.train_accuracy) + ',' +
                   num(f.train_loss) + ',' + num(f.heldout_accuracy) + ',' +
                   num(f.heldout_loss) + ',' + std::to_string(f.clip_events) + '\n';
    }
    write_text(layout.fold_log(arch), folds_csv);
    const RenderedReport rendered = render_report(report);
    write_text(layout.metrics_json(arch), rendered.json);
    write_text(layout.metrics_table(arch), rendered.table);
    write_text(layout.confusion(arch), confusion_csv(report));
    const json manifest = {{"stage", kTrainEval},
                           {"config_hash", hashes.train_eval},
                           {"arch", report.arch},
                           {"selected_fold", cv.selected_fold},
                           {"test_accuracy", report.test_accuracy}};
    write_text(layout.train_eval_manifest(arch), manifest.dump(2) + "\n");
    log << rendered.table;
    return StageOutcome::ran;
  });
}

void cmd_run_all(const RunConfig& config, bool force, std::ostream& log) {
  cmd_preprocess(config, force, log);
  cmd_train_ae(config, force, log);
  cmd_assemble(config, force, log);
  cmd_train_eval(config, force, log);
}

}  // namespace logad
