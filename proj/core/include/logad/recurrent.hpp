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
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logad/ingest.hpp"
#include "logad/numerics.hpp"
#include "logad/random.hpp"

namespace logad {

enum class Arch { lstm, blstm, gru };

Arch arch_from_string(std::string_view name);
std::string_view to_string(Arch arch) noexcept;

/// Affine map feeding one gate: w * x + u * h + b, with w hidden x embed,
/// u hidden x hidden and b 1 x hidden.
struct GateParams {
  Matrix w;
  Matrix u;
  Matrix b;
};

struct LstmCellParams {
  GateParams input;
  GateParams forget;
  GateParams output;
  GateParams candidate;

  std::size_t hidden() const noexcept { return static_cast<std::size_t>(input.w.rows()); }
  std::size_t input_size() const noexcept { return static_cast<std::size_t>(input.w.cols()); }
};

struct LstmState {
  Vector h;
  Vector c;
};

struct GruCellParams {
  GateParams reset;
  GateParams update;
  GateParams candidate;

  std::size_t hidden() const noexcept { return static_cast<std::size_t>(reset.w.rows()); }
  std::size_t input_size() const noexcept { return static_cast<std::size_t>(reset.w.cols()); }
};

/// Glorot-uniform w and u; zero biases except the forget gate, which starts
/// at 1.
LstmCellParams init_lstm_cell(std::size_t input_size, std::size_t hidden, Rng& rng);
GruCellParams init_gru_cell(std::size_t input_size, std::size_t hidden, Rng& rng);

/// i, f, o = sigmoid(.), c_hat = tanh(.), c = f*c_prev + i*c_hat,
/// h = o*tanh(c). Throws std::invalid_argument on shape mismatch.
LstmState lstm_step(const LstmCellParams& params, const Vector& x, const LstmState& prev);

/// r, z = sigmoid(.), h = z*h_prev + (1-z)*tanh(W_h x + U_h (r*h_prev) + b_h).
Vector gru_step(const GruCellParams& params, const Vector& x, const Vector& prev_h);

/// [forward, backward]. Throws std::invalid_argument on length mismatch.
Vector blstm_concat(const Vector& forward_h, const Vector& backward_h);

/// Embedding, one recurrent layer and a 2-way softmax head. Only the cells
/// used by `arch` are populated: `forward` for lstm, `forward` and
/// `backward` for blstm, `gru` for gru.
struct ClassifierParams {
  Arch arch = Arch::lstm;
  Matrix embedding;  // (V+1) x E
  LstmCellParams forward;
  LstmCellParams backward;
  GruCellParams gru;
  Matrix output_weights;  // 2 x D
  Matrix output_bias;     // 1 x 2

  ParamList params();
  ConstParamList params() const;
  std::vector<std::string> param_names() const;

  std::size_t vocab_size() const noexcept {
    return static_cast<std::size_t>(embedding.rows()) - 1;
  }
  std::size_t hidden() const noexcept;
  /// Width of the vector fed to the head: hidden, or 2 * hidden for blstm.
  std::size_t feature_size() const noexcept;

  /// Same layout with every entry zero; used as a gradient accumulator.
  ClassifierParams zeros() const;
};

/// Embedding rows ~ U(-0.05, 0.05); output weights Glorot-uniform, zero bias.
ClassifierParams init_classifier(Arch arch, std::size_t vocab_size, std::size_t embedding_dim,
                                 std::size_t hidden, Rng& rng);

/// Everything classify_backward needs from a forward pass.
struct ClassifierCache {
  struct LstmStep {
    Matrix i, f, o, g, c, tanh_c, h;
  };
  struct GruStep {
    Matrix r, z, n, h, rh;
  };

  Arch arch = Arch::lstm;
  std::size_t batch = 0;
  std::vector<std::vector<std::uint32_t>> tokens;  // [t][b]
  std::vector<Label> labels;
  std::vector<Matrix> inputs;  // embedded x_t, E x B, in time order
  std::vector<LstmStep> forward_steps;   // processing order t = 0..L-1
  std::vector<LstmStep> backward_steps;  // processing order t = L-1..0
  std::vector<GruStep> gru_steps;
  Matrix features;      // D x B, final hidden state(s)
  Matrix dropout_mask;  // D x B, empty when inference
  Matrix dropped;       // features after dropout
  Matrix probabilities; // 2 x B
};

/// Inverted-dropout mask for the head input (entries 0 or 1/(1-q)).
Matrix make_feature_dropout(const ClassifierParams& params, std::size_t batch, double drop,
                            Rng& rng);

/// Batch forward over `examples` (all of one length). The final hidden
/// state (concatenated directions for blstm) goes through the optional
/// dropout mask, then the dense head and softmax. Throws std::out_of_range
/// for token indices above V.
ClassifierCache classify_forward(const ClassifierParams& params,
                                 std::span<const LabeledExample* const> examples,
                                 const Matrix& dropout_mask = Matrix());

/// Single example; dropout is drawn from `rng` only in train mode.
std::array<double, 2> classify_forward(const ClassifierParams& params,
                                       const LabeledExample& example, bool train_mode,
                                       double drop, Rng& rng);

/// Mean categorical cross entropy of the cached batch against its labels.
double classifier_loss(const ClassifierCache& cache);

/// Exact gradients of classifier_loss by backpropagation through time.
ClassifierParams classify_backward(const ClassifierParams& params, const ClassifierCache& cache);

void save_classifier(const std::filesystem::path& path, const ClassifierParams& params,
                     const std::map<std::string, std::string>& meta = {});
ClassifierParams load_classifier(const std::filesystem::path& path,
                                 std::map<std::string, std::string>* meta = nullptr);

}  // namespace logad
