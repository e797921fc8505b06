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

#include "logad/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "logad/checkpoint.hpp"
#include "text_format.hpp"

namespace logad {
namespace {

constexpr double kLogFloor = 1e-12;
constexpr std::size_t kInferenceChunk = 256;

Matrix glorot(std::size_t out, std::size_t in, Rng& rng) {
  const double s = std::sqrt(6.0 / static_cast<double>(in + out));
  Matrix w(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w.data()[i] = rng.uniform(-s, s);
  }
  return w;
}

double cross_entropy(const Matrix& outputs, const Matrix& targets) {
  const auto logp = outputs.array().max(kLogFloor).log();
  return -(targets.array() * logp).sum();
}

double l1_penalty(const AutoencoderParams& params) {
  return params.l1 * params.layers.front().weights.cwiseAbs().sum();
}

// Forward through `params` for every sample in chunks, without dropout.
template <class Fn>
void for_each_inference_chunk(const AutoencoderParams& params,
                              std::span<const AeSample* const> samples, Fn&& fn) {
  for (std::size_t start = 0; start < samples.size(); start += kInferenceChunk) {
    const std::size_t end = std::min(samples.size(), start + kInferenceChunk);
    const AeBatch batch = make_batch(samples.subspan(start, end - start));
    const AeForwardCache cache = ae_forward(params, batch.inputs);
    fn(start, batch, cache);
  }
}

}  // namespace

std::size_t AutoencoderParams::input_size() const {
  return layers.empty() ? 0 : static_cast<std::size_t>(layers.front().weights.cols());
}

ParamList AutoencoderParams::params() {
  ParamList out;
  for (auto& layer : layers) {
    out.push_back(&layer.weights);
    out.push_back(&layer.bias);
  }
  return out;
}

ConstParamList AutoencoderParams::params() const {
  ConstParamList out;
  for (const auto& layer : layers) {
    out.push_back(&layer.weights);
    out.push_back(&layer.bias);
  }
  return out;
}

std::vector<std::string> AutoencoderParams::param_names() const {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    names.push_back("layer" + std::to_string(k) + ".weights");
    names.push_back("layer" + std::to_string(k) + ".bias");
  }
  return names;
}

AutoencoderParams init_autoencoder(std::size_t input_size, std::span<const std::size_t> hidden,
                                   double l1, Rng& rng) {
  if (input_size == 0 || hidden.empty()) {
    throw std::invalid_argument("init_autoencoder: empty architecture");
  }
  AutoencoderParams params;
  params.l1 = l1;
  std::size_t fan_in = input_size;
  for (const std::size_t width : hidden) {
    if (width == 0) {
      throw std::invalid_argument("init_autoencoder: zero-width layer");
    }
    params.layers.push_back(
        {glorot(width, fan_in, rng), Matrix::Zero(1, static_cast<Eigen::Index>(width)),
         Activation::tanh});
    fan_in = width;
  }
  params.layers.push_back({glorot(input_size, fan_in, rng),
                           Matrix::Zero(1, static_cast<Eigen::Index>(input_size)),
                           Activation::softmax});
  return params;
}

void AeTrainConfig::validate() const {
  if (hidden.empty() || std::find(hidden.begin(), hidden.end(), 0U) != hidden.end()) {
    throw std::invalid_argument("autoencoder: hidden layer sizes must be positive");
  }
  if (batch_size == 0) throw std::invalid_argument("autoencoder: batch size must be >= 1");
  if (max_epochs == 0) throw std::invalid_argument("autoencoder: max epochs must be >= 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw std::invalid_argument("autoencoder: dropout must lie in [0, 1)");
  }
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0)) {
    throw std::invalid_argument("autoencoder: validation fraction must lie in [0, 1)");
  }
  if (!(l1 >= 0.0)) throw std::invalid_argument("autoencoder: l1 must be non-negative");
}

AeSample normalize_sequence(const TokenSequence& seq, std::size_t vocab_size) {
  if (vocab_size == 0) {
    throw std::invalid_argument("normalize_sequence: empty vocabulary");
  }
  AeSample s;
  s.input.resize(static_cast<Eigen::Index>(seq.indices.size()));
  const double v = static_cast<double>(vocab_size);
  for (std::size_t i = 0; i < seq.indices.size(); ++i) {
    s.input[static_cast<Eigen::Index>(i)] = static_cast<double>(seq.indices[i]) / v;
  }
  s.scale = s.input.sum();
  if (!(s.scale > 0.0)) {
    throw std::invalid_argument("normalize_sequence: all-padding sequence");
  }
  s.target = s.input / s.scale;
  return s;
}

AeBatch make_batch(std::span<const AeSample* const> samples) {
  AeBatch batch;
  if (samples.empty()) {
    return batch;
  }
  const Eigen::Index len = samples.front()->input.size();
  const auto b = static_cast<Eigen::Index>(samples.size());
  batch.inputs.resize(len, b);
  batch.targets.resize(len, b);
  batch.scales.reserve(samples.size());
  for (Eigen::Index c = 0; c < b; ++c) {
    const AeSample& s = *samples[static_cast<std::size_t>(c)];
    if (s.input.size() != len) {
      throw std::invalid_argument("make_batch: mixed sequence lengths");
    }
    batch.inputs.col(c) = s.input;
    batch.targets.col(c) = s.target;
    batch.scales.push_back(s.scale);
  }
  return batch;
}

DropoutMasks make_dropout_masks(const AutoencoderParams& params, std::size_t batch, double drop,
                                Rng& rng) {
  DropoutMasks masks;
  if (drop <= 0.0) {
    return masks;
  }
  const double keep_scale = 1.0 / (1.0 - drop);
  for (std::size_t k = 0; k + 1 < params.layers.size(); ++k) {
    Matrix m(params.layers[k].weights.rows(), static_cast<Eigen::Index>(batch));
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      m.data()[i] = rng.uniform() < drop ? 0.0 : keep_scale;
    }
    masks.push_back(std::move(m));
  }
  return masks;
}

AeForwardCache ae_forward(const AutoencoderParams& params, const Matrix& inputs,
                          const DropoutMasks& masks) {
  if (static_cast<std::size_t>(inputs.rows()) != params.input_size()) {
    throw std::invalid_argument("ae_forward: input length does not match the network");
  }
  if (!masks.empty() && masks.size() + 1 != params.layers.size()) {
    throw std::invalid_argument("ae_forward: wrong number of dropout masks");
  }
  AeForwardCache cache;
  cache.inputs = inputs;
  cache.masks = masks;
  const Matrix* prev = &cache.inputs;
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    const DenseLayer& layer = params.layers[k];
    Matrix z = layer.weights * *prev;
    z.colwise() += layer.bias.row(0).transpose();
    Matrix a = layer.activation == Activation::softmax ? softmax_columns(z) : tanh_act(z);
    if (!masks.empty() && k + 1 < params.layers.size()) {
      a.array() *= masks[k].array();
    }
    cache.activations.push_back(std::move(a));
    prev = &cache.activations.back();
  }
  return cache;
}

AeForwardCache ae_forward(const AutoencoderParams& params, const TokenSequence& seq,
                          std::size_t vocab_size, bool train_mode, double drop, Rng& rng) {
  const AeSample sample = normalize_sequence(seq, vocab_size);
  Matrix inputs = sample.input;
  DropoutMasks masks;
  if (train_mode) {
    masks = make_dropout_masks(params, 1, drop, rng);
  }
  return ae_forward(params, inputs, masks);
}

double ae_loss(std::span<const double> target, std::span<const double> output,
               const AutoencoderParams& params, double l1_coeff) {
  if (target.size() != output.size()) {
    throw std::invalid_argument("ae_loss: target/output length mismatch");
  }
  double loss = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    loss -= target[i] * std::log(std::max(output[i], kLogFloor));
  }
  if (!params.layers.empty()) {
    loss += l1_coeff * params.layers.front().weights.cwiseAbs().sum();
  }
  return loss;
}

double ae_batch_loss(const AutoencoderParams& params, const Matrix& outputs,
                     const Matrix& targets) {
  const double n = static_cast<double>(outputs.cols());
  return cross_entropy(outputs, targets) / n + l1_penalty(params);
}

std::vector<Matrix> ae_backward(const AutoencoderParams& params, const AeForwardCache& cache,
                                const Matrix& targets) {
  const std::size_t depth = params.layers.size();
  const double n = static_cast<double>(targets.cols());
  std::vector<Matrix> grads(2 * depth);

  // Softmax + cross entropy against a distribution target.
  Matrix dz = (cache.output() - targets) / n;
  for (std::size_t k = depth; k-- > 0;) {
    const Matrix& prev = k == 0 ? cache.inputs : cache.activations[k - 1];
    grads[2 * k] = dz * prev.transpose();
    grads[2 * k + 1] = dz.rowwise().sum().transpose();
    if (k == 0) {
      break;
    }
    Matrix da = params.layers[k].weights.transpose() * dz;
    const Matrix& out = cache.activations[k - 1];
    if (cache.masks.empty()) {
      dz = da.array() * (1.0 - out.array().square());
    } else {
      // out = tanh(z) * m, so d out/dz = m * (1 - tanh^2) with tanh = out / m
      // wherever m is nonzero.
      const Matrix& m = cache.masks[k - 1];
      dz.resize(da.rows(), da.cols());
      for (Eigen::Index i = 0; i < da.size(); ++i) {
        const double mi = m.data()[i];
        if (mi == 0.0) {
          dz.data()[i] = 0.0;
        } else {
          const double t = out.data()[i] / mi;
          dz.data()[i] = da.data()[i] * mi * (1.0 - t * t);
        }
      }
    }
  }
  const Matrix& w0 = params.layers.front().weights;
  grads[0] += params.l1 * w0.unaryExpr([](double w) { return double((w > 0.0) - (w < 0.0)); });
  return grads;
}

AeTrainResult ae_train(std::span<const TokenSequence> class_data, std::size_t vocab_size,
                       const AeTrainConfig& config) {
  config.validate();
  if (class_data.empty()) {
    throw std::invalid_argument("ae_train: no training data");
  }
  const Label cls = class_data.front().label;
  for (const auto& s : class_data) {
    if (s.label != cls) {
      throw std::invalid_argument("ae_train: class data mixes labels");
    }
  }

  std::vector<AeSample> samples;
  samples.reserve(class_data.size());
  for (const auto& s : class_data) {
    samples.push_back(normalize_sequence(s, vocab_size));
  }
  const std::size_t length = static_cast<std::size_t>(samples.front().input.size());

  Rng root(config.seed);
  Rng split_rng = root.derive(1);
  Rng init_rng = root.derive(2);
  Rng train_rng = root.derive(3);

  std::vector<const AeSample*> order(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) order[i] = &samples[i];
  seeded_shuffle(order, split_rng);

  std::size_t n_val = static_cast<std::size_t>(
      std::llround(config.validation_fraction * static_cast<double>(order.size())));
  if (config.validation_fraction > 0.0 && n_val == 0) n_val = 1;
  std::vector<const AeSample*> train;
  std::vector<const AeSample*> validation;
  if (n_val == 0 || n_val >= order.size()) {
    // Too little data to hold anything out; monitor the training set itself.
    train = order;
    validation = order;
  } else {
    train.assign(order.begin(), order.end() - static_cast<std::ptrdiff_t>(n_val));
    validation.assign(order.end() - static_cast<std::ptrdiff_t>(n_val), order.end());
  }

  AeTrainResult result;
  result.params = init_autoencoder(length, config.hidden, config.l1, init_rng);
  AutoencoderParams& params = result.params;
  AdamState adam = AdamState::for_params(std::as_const(params).params(), config.adam);

  auto validation_loss = [&]() {
    double ce = 0.0;
    for_each_inference_chunk(params, validation,
                             [&](std::size_t, const AeBatch& batch, const AeForwardCache& cache) {
                               ce += cross_entropy(cache.output(), batch.targets);
                             });
    return ce / static_cast<double>(validation.size()) + l1_penalty(params);
  };

  AutoencoderParams best = params;
  double best_loss = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;
  const std::size_t stop_after = std::max<std::size_t>(config.patience, 1);

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    seeded_shuffle(train, train_rng);
    double weighted_loss = 0.0;
    for (std::size_t start = 0; start < train.size(); start += config.batch_size) {
      const std::size_t end = std::min(train.size(), start + config.batch_size);
      const AeBatch batch =
          make_batch(std::span<const AeSample* const>(train).subspan(start, end - start));
      const DropoutMasks masks =
          make_dropout_masks(params, end - start, config.dropout, train_rng);
      const AeForwardCache cache = ae_forward(params, batch.inputs, masks);
      const double loss = ae_batch_loss(params, cache.output(), batch.targets);
      if (!std::isfinite(loss)) {
        throw DivergenceError("autoencoder training loss is not finite", epoch);
      }
      weighted_loss += loss * static_cast<double>(end - start);
      const std::vector<Matrix> grads = ae_backward(params, cache, batch.targets);
      ConstParamList grad_refs;
      for (const auto& g : grads) grad_refs.push_back(&g);
      adam_step(params.params(), grad_refs, adam);
    }
    const double val_loss = validation_loss();
    if (!std::isfinite(val_loss)) {
      throw DivergenceError("autoencoder validation loss is not finite", epoch);
    }
    if (val_loss < best_loss) {
      best_loss = val_loss;
      best = params;
      result.best_epoch = epoch;
      since_best = 0;
    } else {
      ++since_best;
    }
    result.log.push_back(
        {epoch, weighted_loss / static_cast<double>(train.size()), val_loss, best_loss});
    if (since_best >= stop_after) {
      result.stopped_early = true;
      break;
    }
  }
  result.params = std::move(best);
  return result;
}

std::vector<FeatureSequence> ae_extract(const AutoencoderParams& params,
                                        std::span<const TokenSequence> inputs,
                                        std::size_t vocab_size, Label class_label) {
  std::vector<AeSample> samples;
  samples.reserve(inputs.size());
  for (const auto& s : inputs) {
    samples.push_back(normalize_sequence(s, vocab_size));
  }
  std::vector<const AeSample*> refs(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) refs[i] = &samples[i];

  const double v = static_cast<double>(vocab_size);
  std::vector<FeatureSequence> features(samples.size());
  for_each_inference_chunk(
      params, refs, [&](std::size_t start, const AeBatch& batch, const AeForwardCache& cache) {
        const Matrix& p = cache.output();
        for (Eigen::Index c = 0; c < p.cols(); ++c) {
          FeatureSequence& f = features[start + static_cast<std::size_t>(c)];
          f.label = class_label;
          f.values.resize(static_cast<std::size_t>(p.rows()));
          const double scale = batch.scales[static_cast<std::size_t>(c)];
          for (Eigen::Index r = 0; r < p.rows(); ++r) {
            f.values[static_cast<std::size_t>(r)] = p(r, c) * scale * v;
          }
        }
      });
  return features;
}

void save_autoencoder(const std::filesystem::path& path, const AutoencoderParams& params,
                      const std::map<std::string, std::string>& meta) {
  Checkpoint ckpt;
  ckpt.kind = "autoencoder";
  ckpt.meta = meta;
  ckpt.meta["l1"] = format_exact(params.l1);
  ckpt.meta["layers"] = std::to_string(params.layers.size());
  std::string acts;
  for (const auto& layer : params.layers) {
    if (!acts.empty()) acts += ',';
    acts += layer.activation == Activation::softmax ? "softmax" : "tanh";
  }
  ckpt.meta["activations"] = acts;
  const auto names = params.param_names();
  const auto refs = params.params();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    ckpt.tensors.emplace_back(names[i], *refs[i]);
  }
  ckpt.save(path);
}

AutoencoderParams load_autoencoder(const std::filesystem::path& path,
                                   std::map<std::string, std::string>* meta) {
  const Checkpoint ckpt = Checkpoint::load(path);
  if (ckpt.kind != "autoencoder") {
    throw std::runtime_error("checkpoint " + path.string() + " is not an autoencoder");
  }
  AutoencoderParams params;
  params.l1 = parse_exact(ckpt.meta_value("l1"));
  const std::size_t depth = std::stoul(ckpt.meta_value("layers"));
  const std::vector<std::string> acts = split_list(ckpt.meta_value("activations"));
  if (acts.size() != depth || depth == 0) {
    throw std::runtime_error("checkpoint " + path.string() + ": inconsistent layer metadata");
  }
  for (std::size_t k = 0; k < depth; ++k) {
    DenseLayer layer;
    layer.weights = ckpt.tensor("layer" + std::to_string(k) + ".weights");
    layer.bias = ckpt.tensor("layer" + std::to_string(k) + ".bias");
    layer.activation = acts[k] == "softmax" ? Activation::softmax : Activation::tanh;
    if (layer.bias.rows() != 1 || layer.bias.cols() != layer.weights.rows() ||
        (k > 0 && layer.weights.cols() != params.layers.back().weights.rows())) {
      throw std::runtime_error("checkpoint " + path.string() + ": layer shapes do not chain");
    }
    params.layers.push_back(std::move(layer));
  }
  if (meta != nullptr) {
    *meta = ckpt.meta;
  }
  return params;
}

}  // namespace logad
