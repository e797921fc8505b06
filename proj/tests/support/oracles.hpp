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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "logad/ingest.hpp"
#include "logad/numerics.hpp"
#include "logad/recurrent.hpp"

namespace logad::testing {

/// Generator for randomized tests, independent of the library's Rng.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

  Matrix matrix(Eigen::Index rows, Eigen::Index cols, double scale = 1.0) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = real(-scale, scale);
    return m;
  }
  Vector vector(Eigen::Index n, double scale = 1.0) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = real(-scale, scale);
    return v;
  }
  GateParams gate(std::size_t in, std::size_t hidden, double scale = 1.0) {
    const auto h = static_cast<Eigen::Index>(hidden);
    return {matrix(h, static_cast<Eigen::Index>(in), scale), matrix(h, h, scale),
            matrix(1, h, scale)};
  }
  LstmCellParams lstm(std::size_t in, std::size_t hidden, double scale = 1.0) {
    return {gate(in, hidden, scale), gate(in, hidden, scale), gate(in, hidden, scale),
            gate(in, hidden, scale)};
  }
  GruCellParams gru(std::size_t in, std::size_t hidden, double scale = 1.0) {
    return {gate(in, hidden, scale), gate(in, hidden, scale), gate(in, hidden, scale)};
  }
  LabeledExample example(std::size_t length, std::size_t vocab) {
    LabeledExample e;
    e.indices.resize(length);
    for (auto& i : e.indices) i = static_cast<std::uint32_t>(index(vocab + 1));
    e.label = coin() ? Label::positive : Label::negative;
    return e;
  }

 private:
  std::mt19937_64 engine_;
};

inline double plain_sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// w x + u h + b for output unit k, as an explicit sum.
inline double gate_sum(const GateParams& g, std::size_t k, const std::vector<double>& x,
                       const std::vector<double>& h) {
  const auto r = static_cast<Eigen::Index>(k);
  double s = g.b(0, r);
  for (std::size_t j = 0; j < x.size(); ++j) s += g.w(r, static_cast<Eigen::Index>(j)) * x[j];
  for (std::size_t j = 0; j < h.size(); ++j) s += g.u(r, static_cast<Eigen::Index>(j)) * h[j];
  return s;
}

struct ScalarLstmOut {
  std::vector<double> h, c;
};

/// One LSTM step evaluated gate by gate, unit by unit.
inline ScalarLstmOut oracle_lstm(const LstmCellParams& p, const std::vector<double>& x,
                                 const std::vector<double>& h_prev,
                                 const std::vector<double>& c_prev) {
  ScalarLstmOut out;
  for (std::size_t k = 0; k < h_prev.size(); ++k) {
    const double i = plain_sigmoid(gate_sum(p.input, k, x, h_prev));
    const double f = plain_sigmoid(gate_sum(p.forget, k, x, h_prev));
    const double o = plain_sigmoid(gate_sum(p.output, k, x, h_prev));
    const double c_hat = std::tanh(gate_sum(p.candidate, k, x, h_prev));
    const double c = f * c_prev[k] + i * c_hat;
    out.c.push_back(c);
    out.h.push_back(o * std::tanh(c));
  }
  return out;
}

inline std::vector<double> oracle_gru(const GruCellParams& p, const std::vector<double>& x,
                                      const std::vector<double>& h_prev) {
  const std::size_t n = h_prev.size();
  std::vector<double> r(n), z(n), rh(n), h(n);
  for (std::size_t k = 0; k < n; ++k) {
    r[k] = plain_sigmoid(gate_sum(p.reset, k, x, h_prev));
    z[k] = plain_sigmoid(gate_sum(p.update, k, x, h_prev));
    rh[k] = r[k] * h_prev[k];
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double cand = std::tanh(gate_sum(p.candidate, k, x, rh));
    h[k] = z[k] * h_prev[k] + (1.0 - z[k]) * cand;
  }
  return h;
}

inline std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

inline Vector to_eigen(const std::vector<double>& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

}  // namespace logad::testing
