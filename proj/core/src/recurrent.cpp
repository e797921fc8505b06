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

#include "logad/recurrent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "logad/checkpoint.hpp"

namespace logad {
namespace {

constexpr double kLogFloor = 1e-12;

using LstmStep = ClassifierCache::LstmStep;
using GruStep = ClassifierCache::GruStep;

Matrix glorot(Eigen::Index out, Eigen::Index in, Rng& rng) {
  const double s = std::sqrt(6.0 / static_cast<double>(in + out));
  Matrix w(out, in);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w.data()[i] = rng.uniform(-s, s);
  }
  return w;
}

GateParams init_gate(std::size_t input_size, std::size_t hidden, double bias, Rng& rng) {
  const auto h = static_cast<Eigen::Index>(hidden);
  GateParams g;
  g.w = glorot(h, static_cast<Eigen::Index>(input_size), rng);
  g.u = glorot(h, h, rng);
  g.b = Matrix::Constant(1, h, bias);
  return g;
}

GateParams zero_gate(const GateParams& g) {
  return {zeros_like(g.w), zeros_like(g.u), zeros_like(g.b)};
}

void push_gate(GateParams& g, ParamList& out) {
  out.push_back(&g.w);
  out.push_back(&g.u);
  out.push_back(&g.b);
}

void push_gate(const GateParams& g, ConstParamList& out) {
  out.push_back(&g.w);
  out.push_back(&g.u);
  out.push_back(&g.b);
}

void push_gate_names(const std::string& prefix, std::vector<std::string>& out) {
  out.push_back(prefix + ".w");
  out.push_back(prefix + ".u");
  out.push_back(prefix + ".b");
}

template <class Cell, class List>
void push_lstm(Cell& c, List& out) {
  push_gate(c.input, out);
  push_gate(c.forget, out);
  push_gate(c.output, out);
  push_gate(c.candidate, out);
}

template <class Cell, class List>
void push_gru(Cell& c, List& out) {
  push_gate(c.reset, out);
  push_gate(c.update, out);
  push_gate(c.candidate, out);
}

void lstm_names(const std::string& prefix, std::vector<std::string>& out) {
  for (const char* gate : {"input", "forget", "output", "candidate"}) {
    push_gate_names(prefix + "." + gate, out);
  }
}

void gru_names(const std::string& prefix, std::vector<std::string>& out) {
  for (const char* gate : {"reset", "update", "candidate"}) {
    push_gate_names(prefix + "." + gate, out);
  }
}

template <class List>
List collect(auto& p) {
  List out;
  out.push_back(&p.embedding);
  switch (p.arch) {
    case Arch::lstm:
      push_lstm(p.forward, out);
      break;
    case Arch::blstm:
      push_lstm(p.forward, out);
      push_lstm(p.backward, out);
      break;
    case Arch::gru:
      push_gru(p.gru, out);
      break;
  }
  out.push_back(&p.output_weights);
  out.push_back(&p.output_bias);
  return out;
}

Matrix affine(const GateParams& g, const Matrix& x, const Matrix& h) {
  Matrix z = g.w * x;
  z.noalias() += g.u * h;
  z.colwise() += g.b.row(0).transpose();
  return z;
}

void accumulate_gate(GateParams& grad, const Matrix& da, const Matrix& x, const Matrix& h_prev) {
  grad.w.noalias() += da * x.transpose();
  grad.u.noalias() += da * h_prev.transpose();
  grad.b += da.rowwise().sum().transpose();
}

LstmStep lstm_forward_step(const LstmCellParams& p, const Matrix& x, const Matrix& h_prev,
                           const Matrix& c_prev) {
  LstmStep s;
  s.i = sigmoid(affine(p.input, x, h_prev));
  s.f = sigmoid(affine(p.forget, x, h_prev));
  s.o = sigmoid(affine(p.output, x, h_prev));
  s.g = tanh_act(affine(p.candidate, x, h_prev));
  s.c = s.f.cwiseProduct(c_prev) + s.i.cwiseProduct(s.g);
  s.tanh_c = tanh_act(s.c);
  s.h = s.o.cwiseProduct(s.tanh_c);
  return s;
}

GruStep gru_forward_step(const GruCellParams& p, const Matrix& x, const Matrix& h_prev) {
  GruStep s;
  s.r = sigmoid(affine(p.reset, x, h_prev));
  s.z = sigmoid(affine(p.update, x, h_prev));
  s.rh = s.r.cwiseProduct(h_prev);
  s.n = tanh_act(affine(p.candidate, x, s.rh));
  s.h = s.z.cwiseProduct(h_prev) + (1.0 - s.z.array()).matrix().cwiseProduct(s.n);
  return s;
}

std::vector<LstmStep> lstm_run(const LstmCellParams& p, const std::vector<const Matrix*>& xs,
                               std::size_t batch) {
  const auto h = static_cast<Eigen::Index>(p.hidden());
  const auto b = static_cast<Eigen::Index>(batch);
  std::vector<LstmStep> steps;
  steps.reserve(xs.size());
  const Matrix zero = Matrix::Zero(h, b);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const Matrix& h_prev = k == 0 ? zero : steps[k - 1].h;
    const Matrix& c_prev = k == 0 ? zero : steps[k - 1].c;
    steps.push_back(lstm_forward_step(p, *xs[k], h_prev, c_prev));
  }
  return steps;
}

// Backpropagates dh (gradient w.r.t. the last processed hidden state)
// through every step, accumulating into `grad` and adding input gradients
// into dxs (processing order).
void lstm_backprop(const LstmCellParams& p, LstmCellParams& grad,
                   const std::vector<LstmStep>& steps, const std::vector<const Matrix*>& xs,
                   Matrix dh, const std::vector<Matrix*>& dxs) {
  const Matrix zero = Matrix::Zero(dh.rows(), dh.cols());
  Matrix dc = zero;
  for (std::size_t k = steps.size(); k-- > 0;) {
    const LstmStep& s = steps[k];
    const Matrix& h_prev = k == 0 ? zero : steps[k - 1].h;
    const Matrix& c_prev = k == 0 ? zero : steps[k - 1].c;
    const Matrix& x = *xs[k];

    const Matrix d_o = dh.cwiseProduct(s.tanh_c);
    dc.array() += dh.array() * s.o.array() * (1.0 - s.tanh_c.array().square());

    const Matrix da_i = (dc.array() * s.g.array() * s.i.array() * (1.0 - s.i.array())).matrix();
    const Matrix da_f = (dc.array() * c_prev.array() * s.f.array() * (1.0 - s.f.array())).matrix();
    const Matrix da_o = (d_o.array() * s.o.array() * (1.0 - s.o.array())).matrix();
    const Matrix da_g = (dc.array() * s.i.array() * (1.0 - s.g.array().square())).matrix();

    accumulate_gate(grad.input, da_i, x, h_prev);
    accumulate_gate(grad.forget, da_f, x, h_prev);
    accumulate_gate(grad.output, da_o, x, h_prev);
    accumulate_gate(grad.candidate, da_g, x, h_prev);

    Matrix& dx = *dxs[k];
    dx.noalias() += p.input.w.transpose() * da_i;
    dx.noalias() += p.forget.w.transpose() * da_f;
    dx.noalias() += p.output.w.transpose() * da_o;
    dx.noalias() += p.candidate.w.transpose() * da_g;

    dh.noalias() = p.input.u.transpose() * da_i;
    dh.noalias() += p.forget.u.transpose() * da_f;
    dh.noalias() += p.output.u.transpose() * da_o;
    dh.noalias() += p.candidate.u.transpose() * da_g;
    dc = dc.cwiseProduct(s.f);
  }
}

void gru_backprop(const GruCellParams& p, GruCellParams& grad, const std::vector<GruStep>& steps,
                  const std::vector<const Matrix*>& xs, Matrix dh,
                  const std::vector<Matrix*>& dxs) {
  const Matrix zero = Matrix::Zero(dh.rows(), dh.cols());
  for (std::size_t k = steps.size(); k-- > 0;) {
    const GruStep& s = steps[k];
    const Matrix& h_prev = k == 0 ? zero : steps[k - 1].h;
    const Matrix& x = *xs[k];

    const Matrix dz = dh.cwiseProduct(h_prev - s.n);
    const Matrix da_n = (dh.array() * (1.0 - s.z.array()) * (1.0 - s.n.array().square())).matrix();
    Matrix dh_prev = dh.cwiseProduct(s.z);

    accumulate_gate(grad.candidate, da_n, x, s.rh);
    const Matrix d_rh = p.candidate.u.transpose() * da_n;
    const Matrix da_r = (d_rh.array() * h_prev.array() * s.r.array() * (1.0 - s.r.array())).matrix();
    dh_prev += d_rh.cwiseProduct(s.r);
    const Matrix da_z = (dz.array() * s.z.array() * (1.0 - s.z.array())).matrix();

    accumulate_gate(grad.reset, da_r, x, h_prev);
    accumulate_gate(grad.update, da_z, x, h_prev);

    Matrix& dx = *dxs[k];
    dx.noalias() += p.reset.w.transpose() * da_r;
    dx.noalias() += p.update.w.transpose() * da_z;
    dx.noalias() += p.candidate.w.transpose() * da_n;

    dh_prev.noalias() += p.reset.u.transpose() * da_r;
    dh_prev.noalias() += p.update.u.transpose() * da_z;
    dh = std::move(dh_prev);
  }
}

void check_cell_input(std::size_t input_size, std::size_t hidden, const Vector& x,
                      const Vector& h, const char* who) {
  if (static_cast<std::size_t>(x.size()) != input_size ||
      static_cast<std::size_t>(h.size()) != hidden) {
    throw std::invalid_argument(std::string(who) + ": shape mismatch");
  }
}

LstmCellParams zero_lstm(const LstmCellParams& c) {
  return {zero_gate(c.input), zero_gate(c.forget), zero_gate(c.output), zero_gate(c.candidate)};
}

GruCellParams zero_gru(const GruCellParams& c) {
  return {zero_gate(c.reset), zero_gate(c.update), zero_gate(c.candidate)};
}

}  // namespace

Arch arch_from_string(std::string_view name) {
  if (name == "lstm") return Arch::lstm;
  if (name == "blstm") return Arch::blstm;
  if (name == "gru") return Arch::gru;
  throw std::invalid_argument("unknown architecture '" + std::string(name) + "'");
}

std::string_view to_string(Arch arch) noexcept {
  switch (arch) {
    case Arch::lstm: return "lstm";
    case Arch::blstm: return "blstm";
    case Arch::gru: return "gru";
  }
  return "lstm";
}

LstmCellParams init_lstm_cell(std::size_t input_size, std::size_t hidden, Rng& rng) {
  LstmCellParams p;
  p.input = init_gate(input_size, hidden, 0.0, rng);
  p.forget = init_gate(input_size, hidden, 1.0, rng);
  p.output = init_gate(input_size, hidden, 0.0, rng);
  p.candidate = init_gate(input_size, hidden, 0.0, rng);
  return p;
}

GruCellParams init_gru_cell(std::size_t input_size, std::size_t hidden, Rng& rng) {
  GruCellParams p;
  p.reset = init_gate(input_size, hidden, 0.0, rng);
  p.update = init_gate(input_size, hidden, 0.0, rng);
  p.candidate = init_gate(input_size, hidden, 0.0, rng);
  return p;
}

LstmState lstm_step(const LstmCellParams& params, const Vector& x, const LstmState& prev) {
  check_cell_input(params.input_size(), params.hidden(), x, prev.h, "lstm_step");
  if (prev.c.size() != prev.h.size()) {
    throw std::invalid_argument("lstm_step: h and C lengths differ");
  }
  const Matrix xm = x;
  const Matrix hm = prev.h;
  const Matrix cm = prev.c;
  const LstmStep s = lstm_forward_step(params, xm, hm, cm);
  return {s.h.col(0), s.c.col(0)};
}

Vector gru_step(const GruCellParams& params, const Vector& x, const Vector& prev_h) {
  check_cell_input(params.input_size(), params.hidden(), x, prev_h, "gru_step");
  const Matrix xm = x;
  const Matrix hm = prev_h;
  return gru_forward_step(params, xm, hm).h.col(0);
}

Vector blstm_concat(const Vector& forward_h, const Vector& backward_h) {
  if (forward_h.size() != backward_h.size()) {
    throw std::invalid_argument("blstm_concat: direction lengths differ");
  }
  Vector out(forward_h.size() + backward_h.size());
  out << forward_h, backward_h;
  return out;
}

ParamList ClassifierParams::params() { return collect<ParamList>(*this); }

ConstParamList ClassifierParams::params() const { return collect<ConstParamList>(*this); }

std::vector<std::string> ClassifierParams::param_names() const {
  std::vector<std::string> names{"embedding"};
  switch (arch) {
    case Arch::lstm:
      lstm_names("forward", names);
      break;
    case Arch::blstm:
      lstm_names("forward", names);
      lstm_names("backward", names);
      break;
    case Arch::gru:
      gru_names("gru", names);
      break;
  }
  names.emplace_back("output.w");
  names.emplace_back("output.b");
  return names;
}

std::size_t ClassifierParams::hidden() const noexcept {
  return arch == Arch::gru ? gru.hidden() : forward.hidden();
}

std::size_t ClassifierParams::feature_size() const noexcept {
  return arch == Arch::blstm ? 2 * hidden() : hidden();
}

ClassifierParams ClassifierParams::zeros() const {
  ClassifierParams z;
  z.arch = arch;
  z.embedding = zeros_like(embedding);
  z.forward = zero_lstm(forward);
  z.backward = zero_lstm(backward);
  z.gru = zero_gru(gru);
  z.output_weights = zeros_like(output_weights);
  z.output_bias = zeros_like(output_bias);
  return z;
}

ClassifierParams init_classifier(Arch arch, std::size_t vocab_size, std::size_t embedding_dim,
                                 std::size_t hidden, Rng& rng) {
  if (embedding_dim == 0 || hidden == 0) {
    throw std::invalid_argument("init_classifier: zero embedding or hidden size");
  }
  ClassifierParams p;
  p.arch = arch;
  p.embedding.resize(static_cast<Eigen::Index>(vocab_size + 1),
                     static_cast<Eigen::Index>(embedding_dim));
  for (Eigen::Index i = 0; i < p.embedding.size(); ++i) {
    p.embedding.data()[i] = rng.uniform(-0.05, 0.05);
  }
  switch (arch) {
    case Arch::lstm:
      p.forward = init_lstm_cell(embedding_dim, hidden, rng);
      break;
    case Arch::blstm:
      p.forward = init_lstm_cell(embedding_dim, hidden, rng);
      p.backward = init_lstm_cell(embedding_dim, hidden, rng);
      break;
    case Arch::gru:
      p.gru = init_gru_cell(embedding_dim, hidden, rng);
      break;
  }
  p.output_weights = glorot(2, static_cast<Eigen::Index>(p.feature_size()), rng);
  p.output_bias = Matrix::Zero(1, 2);
  return p;
}

Matrix make_feature_dropout(const ClassifierParams& params, std::size_t batch, double drop,
                            Rng& rng) {
  if (drop <= 0.0) {
    return Matrix();
  }
  const double keep_scale = 1.0 / (1.0 - drop);
  Matrix m(static_cast<Eigen::Index>(params.feature_size()), static_cast<Eigen::Index>(batch));
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m.data()[i] = rng.uniform() < drop ? 0.0 : keep_scale;
  }
  return m;
}

ClassifierCache classify_forward(const ClassifierParams& params,
                                 std::span<const LabeledExample* const> examples,
                                 const Matrix& dropout_mask) {
  if (examples.empty()) {
    throw std::invalid_argument("classify_forward: empty batch");
  }
  ClassifierCache cache;
  cache.arch = params.arch;
  cache.batch = examples.size();
  const std::size_t length = examples.front()->indices.size();
  if (length == 0) {
    throw std::invalid_argument("classify_forward: empty sequence");
  }
  const std::size_t vocab = params.vocab_size();
  const auto b = static_cast<Eigen::Index>(cache.batch);

  cache.tokens.assign(length, std::vector<std::uint32_t>(cache.batch));
  cache.labels.reserve(cache.batch);
  for (std::size_t j = 0; j < cache.batch; ++j) {
    const LabeledExample& ex = *examples[j];
    if (ex.indices.size() != length) {
      throw std::invalid_argument("classify_forward: mixed sequence lengths in batch");
    }
    for (std::size_t t = 0; t < length; ++t) {
      if (ex.indices[t] > vocab) {
        throw std::out_of_range("classify_forward: token index " + std::to_string(ex.indices[t]) +
                                " exceeds vocabulary size " + std::to_string(vocab));
      }
      cache.tokens[t][j] = ex.indices[t];
    }
    cache.labels.push_back(ex.label);
  }

  cache.inputs.reserve(length);
  for (std::size_t t = 0; t < length; ++t) {
    Matrix x(params.embedding.cols(), b);
    for (Eigen::Index j = 0; j < b; ++j) {
      x.col(j) = params.embedding.row(cache.tokens[t][static_cast<std::size_t>(j)]).transpose();
    }
    cache.inputs.push_back(std::move(x));
  }

  std::vector<const Matrix*> forward_xs;
  for (const auto& x : cache.inputs) forward_xs.push_back(&x);

  switch (params.arch) {
    case Arch::lstm:
      cache.forward_steps = lstm_run(params.forward, forward_xs, cache.batch);
      cache.features = cache.forward_steps.back().h;
      break;
    case Arch::blstm: {
      cache.forward_steps = lstm_run(params.forward, forward_xs, cache.batch);
      std::vector<const Matrix*> reversed(forward_xs.rbegin(), forward_xs.rend());
      cache.backward_steps = lstm_run(params.backward, reversed, cache.batch);
      const auto h = static_cast<Eigen::Index>(params.hidden());
      cache.features.resize(2 * h, b);
      cache.features.topRows(h) = cache.forward_steps.back().h;
      cache.features.bottomRows(h) = cache.backward_steps.back().h;
      break;
    }
    case Arch::gru: {
      const Matrix zero = Matrix::Zero(static_cast<Eigen::Index>(params.hidden()), b);
      cache.gru_steps.reserve(length);
      for (std::size_t t = 0; t < length; ++t) {
        const Matrix& h_prev = t == 0 ? zero : cache.gru_steps.back().h;
        cache.gru_steps.push_back(gru_forward_step(params.gru, cache.inputs[t], h_prev));
      }
      cache.features = cache.gru_steps.back().h;
      break;
    }
  }

  if (dropout_mask.size() > 0) {
    if (dropout_mask.rows() != cache.features.rows() || dropout_mask.cols() != b) {
      throw std::invalid_argument("classify_forward: dropout mask shape mismatch");
    }
    cache.dropout_mask = dropout_mask;
    cache.dropped = cache.features.cwiseProduct(dropout_mask);
  } else {
    cache.dropped = cache.features;
  }

  Matrix logits = params.output_weights * cache.dropped;
  logits.colwise() += params.output_bias.row(0).transpose();
  cache.probabilities = softmax_columns(logits);
  return cache;
}

std::array<double, 2> classify_forward(const ClassifierParams& params,
                                       const LabeledExample& example, bool train_mode,
                                       double drop, Rng& rng) {
  const LabeledExample* batch[] = {&example};
  const Matrix mask = train_mode ? make_feature_dropout(params, 1, drop, rng) : Matrix();
  const ClassifierCache cache = classify_forward(params, batch, mask);
  return {cache.probabilities(0, 0), cache.probabilities(1, 0)};
}

double classifier_loss(const ClassifierCache& cache) {
  double total = 0.0;
  for (std::size_t j = 0; j < cache.batch; ++j) {
    const double p = cache.probabilities(to_int(cache.labels[j]), static_cast<Eigen::Index>(j));
    total -= std::log(std::max(p, kLogFloor));
  }
  return total / static_cast<double>(cache.batch);
}

ClassifierParams classify_backward(const ClassifierParams& params, const ClassifierCache& cache) {
  ClassifierParams grad = params.zeros();
  const auto b = static_cast<Eigen::Index>(cache.batch);

  Matrix dlogits = cache.probabilities;
  for (Eigen::Index j = 0; j < b; ++j) {
    dlogits(to_int(cache.labels[static_cast<std::size_t>(j)]), j) -= 1.0;
  }
  dlogits /= static_cast<double>(cache.batch);

  grad.output_weights.noalias() = dlogits * cache.dropped.transpose();
  grad.output_bias = dlogits.rowwise().sum().transpose();
  Matrix dfeatures = params.output_weights.transpose() * dlogits;
  if (cache.dropout_mask.size() > 0) {
    dfeatures = dfeatures.cwiseProduct(cache.dropout_mask);
  }

  const std::size_t length = cache.inputs.size();
  std::vector<Matrix> dxs(length, Matrix::Zero(params.embedding.cols(), b));
  std::vector<const Matrix*> xs;
  std::vector<Matrix*> dx_refs;
  for (std::size_t t = 0; t < length; ++t) {
    xs.push_back(&cache.inputs[t]);
    dx_refs.push_back(&dxs[t]);
  }

  switch (params.arch) {
    case Arch::lstm:
      lstm_backprop(params.forward, grad.forward, cache.forward_steps, xs, dfeatures, dx_refs);
      break;
    case Arch::blstm: {
      const auto h = static_cast<Eigen::Index>(params.hidden());
      lstm_backprop(params.forward, grad.forward, cache.forward_steps, xs, dfeatures.topRows(h),
                    dx_refs);
      std::vector<const Matrix*> rxs(xs.rbegin(), xs.rend());
      std::vector<Matrix*> rdx(dx_refs.rbegin(), dx_refs.rend());
      lstm_backprop(params.backward, grad.backward, cache.backward_steps, rxs,
                    dfeatures.bottomRows(h), rdx);
      break;
    }
    case Arch::gru:
      gru_backprop(params.gru, grad.gru, cache.gru_steps, xs, dfeatures, dx_refs);
      break;
  }

  for (std::size_t t = 0; t < length; ++t) {
    for (Eigen::Index j = 0; j < b; ++j) {
      grad.embedding.row(cache.tokens[t][static_cast<std::size_t>(j)]) +=
          dxs[t].col(j).transpose();
    }
  }
  return grad;
}

void save_classifier(const std::filesystem::path& path, const ClassifierParams& params,
                     const std::map<std::string, std::string>& meta) {
  Checkpoint ckpt;
  ckpt.kind = "classifier";
  ckpt.meta = meta;
  ckpt.meta["arch"] = std::string(to_string(params.arch));
  const auto names = params.param_names();
  const auto refs = params.params();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    ckpt.tensors.emplace_back(names[i], *refs[i]);
  }
  ckpt.save(path);
}

ClassifierParams load_classifier(const std::filesystem::path& path,
                                 std::map<std::string, std::string>* meta) {
  const Checkpoint ckpt = Checkpoint::load(path);
  if (ckpt.kind != "classifier") {
    throw std::runtime_error("checkpoint " + path.string() + " is not a classifier");
  }
  ClassifierParams p;
  p.arch = arch_from_string(ckpt.meta_value("arch"));
  const auto names = p.param_names();
  const auto refs = p.params();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    *refs[i] = ckpt.tensor(names[i]);
  }
  const auto e = p.embedding.cols();
  const auto h = static_cast<Eigen::Index>(p.hidden());
  // Cell tensors come in (w, u, b) triples between the embedding and head.
  for (std::size_t i = 1; i + 5 <= refs.size(); i += 3) {
    const Matrix& w = *refs[i];
    const Matrix& u = *refs[i + 1];
    const Matrix& bias = *refs[i + 2];
    if (w.rows() != h || w.cols() != e || u.rows() != h || u.cols() != h || bias.rows() != 1 ||
        bias.cols() != h) {
      throw std::runtime_error("checkpoint " + path.string() + ": inconsistent cell shapes");
    }
  }
  if (p.output_weights.rows() != 2 ||
      p.output_weights.cols() != static_cast<Eigen::Index>(p.feature_size()) ||
      p.output_bias.rows() != 1 || p.output_bias.cols() != 2) {
    throw std::runtime_error("checkpoint " + path.string() + ": inconsistent head shapes");
  }
  if (meta != nullptr) {
    *meta = ckpt.meta;
  }
  return p;
}

}  // namespace logad
