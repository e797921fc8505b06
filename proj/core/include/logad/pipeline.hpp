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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "logad/assembly.hpp"
#include "logad/autoencoder.hpp"
#include "logad/classifier_training.hpp"
#include "logad/ingest.hpp"
#include "logad/recurrent.hpp"

namespace logad {

/// Every knob of a pipeline run. Zero sequence length and an unset split
/// mean "the dataset default".
struct RunConfig {
  DatasetKind dataset = DatasetKind::generic;
  std::filesystem::path input;
  std::optional<std::filesystem::path> label_file;
  std::size_t sequence_length = 0;
  std::size_t min_tokens = 5;
  Arch arch = Arch::lstm;
  AeTrainConfig autoencoder;
  ClfTrainConfig classifier;
  std::optional<SplitSpec> split;
  double noise_variance = 0.1;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = "out";

  std::size_t effective_length() const;
  SplitSpec effective_split() const;
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Reads the JSON schema documented in the README. Relative paths are
  /// resolved against `base_dir`. Unknown keys are rejected.
  static RunConfig from_json(std::string_view text,
                             const std::filesystem::path& base_dir = {});
  std::string to_json() const;
};

RunConfig load_run_config(const std::filesystem::path& path);

/// FNV-1a 64-bit, as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

/// Each stage hashes its own settings together with its upstream hash, so a
/// change anywhere invalidates everything downstream. The architecture only
/// enters the train-eval hash.
struct StageHashes {
  std::string preprocess;
  std::string autoencoder;
  std::string assemble;
  std::string train_eval;
};

StageHashes stage_hashes(const RunConfig& config);

class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

enum class StageOutcome { ran, skipped };

/// Artifact locations under the output directory.
struct RunLayout {
  std::filesystem::path root;

  std::filesystem::path vocabulary() const { return root / "vocab.txt"; }
  std::filesystem::path encoded_positive() const { return root / "positive.enc"; }
  std::filesystem::path encoded_negative() const { return root / "negative.enc"; }
  std::filesystem::path preprocess_manifest() const { return root / "preprocess.json"; }
  std::filesystem::path ae_positive() const { return root / "ae_positive.ckpt"; }
  std::filesystem::path ae_negative() const { return root / "ae_negative.ckpt"; }
  std::filesystem::path ae_positive_log() const { return root / "ae_positive_loss.csv"; }
  std::filesystem::path ae_negative_log() const { return root / "ae_negative_loss.csv"; }
  std::filesystem::path ae_manifest() const { return root / "train_ae.json"; }
  std::filesystem::path train_split() const { return root / "train.enc"; }
  std::filesystem::path validation_split() const { return root / "validation.enc"; }
  std::filesystem::path test_split() const { return root / "test.enc"; }
  std::filesystem::path assemble_manifest() const { return root / "assemble.json"; }
  std::filesystem::path arch_dir(Arch arch) const { return root / std::string(to_string(arch)); }
  std::filesystem::path classifier(Arch arch) const { return arch_dir(arch) / "classifier.ckpt"; }
  std::filesystem::path cv_report(Arch arch) const { return arch_dir(arch) / "cv_report.json"; }
  std::filesystem::path fold_log(Arch arch) const { return arch_dir(arch) / "folds.csv"; }
  std::filesystem::path metrics_json(Arch arch) const { return arch_dir(arch) / "metrics.json"; }
  std::filesystem::path metrics_table(Arch arch) const { return arch_dir(arch) / "metrics.txt"; }
  std::filesystem::path confusion(Arch arch) const { return arch_dir(arch) / "confusion.csv"; }
  std::filesystem::path train_eval_manifest(Arch arch) const {
    return arch_dir(arch) / "train_eval.json";
  }
};

/// Stage commands. Each skips when its outputs already carry the current
/// config hash, refuses to overwrite outputs or consume inputs from a
/// different configuration unless `force`, and reports failures as
/// StageError. Progress goes to `log`.
StageOutcome cmd_preprocess(const RunConfig& config, bool force, std::ostream& log);
StageOutcome cmd_train_ae(const RunConfig& config, bool force, std::ostream& log);
StageOutcome cmd_assemble(const RunConfig& config, bool force, std::ostream& log);
StageOutcome cmd_train_eval(const RunConfig& config, bool force, std::ostream& log);
void cmd_run_all(const RunConfig& config, bool force, std::ostream& log);

}  // namespace logad
