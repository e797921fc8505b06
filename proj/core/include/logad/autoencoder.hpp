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
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "logad/ingest.hpp"
#include "logad/numerics.hpp"
#include "logad/random.hpp"

namespace logad {

/// Thrown when a training loss becomes non-finite.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t epoch)
      : std::runtime_error(what + " (epoch " + std::to_string(epoch) + ")"), epoch_(epoch) {}
  std::size_t epoch() const noexcept { return epoch_; }

 private:
  std::size_t epoch_;
};

enum class Activation { tanh, softmax };

struct DenseLayer {
  Matrix weights;  // out x in
  Matrix bias;     // 1 x out
  Activation activation = Activation::tanh;
};

/// Feed-forward autoencoder over a length-L index sequence: tanh hidden
/// layers (400/200/200 by default) and a softmax output of size L. The first
/// layer's weights carry an L1 penalty.
struct AutoencoderParams {
  std::vector<DenseLayer> layers;
  double l1 = 0.01;

  std::size_t input_size() const;
  ParamList params();
  ConstParamList params() const;
  std::vector<std::string> param_names() const;
};

/// Glorot-uniform weights (s = sqrt(6 / (fan_in + fan_out))), zero biases.
AutoencoderParams init_autoencoder(std::size_t input_size, std::span<const std::size_t> hidden,
                                   double l1, Rng& rng);

struct AeTrainConfig {
  std::vector<std::size_t> hidden{400, 200, 200};
  std::size_t batch_size = 128;
  std::size_t max_epochs = 100;
  double dropout = 0.8;  // drop probability
  std::size_t patience = 5;
  double validation_fraction = 0.1;
  double l1 = 0.01;
  std::uint64_t seed = 0;
  AdamOptions adam;

  /// Throws std::invalid_argument on out-of-range settings.
  void validate() const;
};

/// Network input and reconstruction target for one sequence: x = indices / V
/// and t = x / sum(x). `scale` is sum(x).
struct AeSample {
  Vector input;
  Vector target;
  double scale = 0.0;
};

/// Throws std::invalid_argument for an all-padding sequence or V = 0.
AeSample normalize_sequence(const TokenSequence& seq, std::size_t vocab_size);

/// Column-stacked batch of samples: inputs and targets are L x B.
struct AeBatch {
  Matrix inputs;
  Matrix targets;
  std::vector<double> scales;
};
AeBatch make_batch(std::span<const AeSample* const> samples);

/// Inverted-dropout masks, one per hidden layer output (entries 0 or
/// 1/(1-q)). An empty mask list means no dropout.
using DropoutMasks = std::vector<Matrix>;
DropoutMasks make_dropout_masks(const AutoencoderParams& params, std::size_t batch, double drop,
                                Rng& rng);

struct AeForwardCache {
  Matrix inputs;
  std::vector<Matrix> activations;  // post-activation output of each layer
  DropoutMasks masks;
  const Matrix& output() const { return activations.back(); }
};

/// Batch forward pass; columns of `inputs` are samples. Masks apply after
/// every hidden layer when non-empty.
AeForwardCache ae_forward(const AutoencoderParams& params, const Matrix& inputs,
                          const DropoutMasks& masks = {});

/// Single-sequence forward. Dropout is drawn from `rng` only when
/// `train_mode` is set.
AeForwardCache ae_forward(const AutoencoderParams& params, const TokenSequence& seq,
                          std::size_t vocab_size, bool train_mode, double drop, Rng& rng);

/// -sum_i t_i log(max(p_i, 1e-12)) + l1_coeff * sum |W_1|.
double ae_loss(std::span<const double> target, std::span<const double> output,
               const AutoencoderParams& params, double l1_coeff);

/// Mean cross entropy over the batch columns plus the L1 penalty.
double ae_batch_loss(const AutoencoderParams& params, const Matrix& outputs,
                     const Matrix& targets);

/// Gradients of ae_batch_loss, one matrix per entry of params().
std::vector<Matrix> ae_backward(const AutoencoderParams& params, const AeForwardCache& cache,
                                const Matrix& targets);

struct AeEpochLog {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double validation_loss = 0.0;
  double best_validation_loss = 0.0;
};

struct AeTrainResult {
  AutoencoderParams params;
  std::vector<AeEpochLog> log;
  std::size_t best_epoch = 0;
  bool stopped_early = false;
};

/// Mini-batch ADAM on one class. The last `validation_fraction` of a seeded
/// shuffle is held out; training stops after `patience` epochs without a
/// validation improvement (at the first one when patience is 0) and returns
/// the parameters from the best epoch. Throws DivergenceError on a
/// non-finite loss.
AeTrainResult ae_train(std::span<const TokenSequence> class_data, std::size_t vocab_size,
                       const AeTrainConfig& config);

/// Real-valued reconstruction on the index scale.
struct FeatureSequence {
  std::vector<double> values;
  Label label = Label::positive;
};

/// Inference-mode reconstruction p of each input, rescaled as p * sum(x) * V
/// and tagged with `class_label`.
std::vector<FeatureSequence> ae_extract(const AutoencoderParams& params,
                                        std::span<const TokenSequence> inputs,
                                        std::size_t vocab_size, Label class_label);

void save_autoencoder(const std::filesystem::path& path, const AutoencoderParams& params,
                      const std::map<std::string, std::string>& meta = {});
AutoencoderParams load_autoencoder(const std::filesystem::path& path,
                                   std::map<std::string, std::string>* meta = nullptr);

}  // namespace logad
