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

#include "logad/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace logad {

double sigmoid(double x) noexcept {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Vector sigmoid(const Vector& x) {
  return x.unaryExpr([](double v) { return sigmoid(v); });
}

Matrix sigmoid(const Matrix& x) {
  return x.unaryExpr([](double v) { return sigmoid(v); });
}

Vector tanh_act(const Vector& x) {
  return x.unaryExpr([](double v) { return std::tanh(v); });
}

Matrix tanh_act(const Matrix& x) {
  return x.unaryExpr([](double v) { return std::tanh(v); });
}

Vector softmax(const Vector& x) {
  if (x.size() == 0) {
    throw std::invalid_argument("softmax: empty input");
  }
  const double max = x.maxCoeff();
  Vector out = (x.array() - max).exp().matrix();
  out /= out.sum();
  return out;
}

Matrix softmax_columns(const Matrix& logits) {
  if (logits.rows() == 0) {
    throw std::invalid_argument("softmax_columns: no rows");
  }
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    const double max = logits.col(c).maxCoeff();
    out.col(c) = (logits.col(c).array() - max).exp().matrix();
    out.col(c) /= out.col(c).sum();
  }
  return out;
}

bool all_finite(const Matrix& m) noexcept { return m.allFinite(); }

double squared_norm(const ConstParamList& params) {
  double total = 0.0;
  for (const Matrix* p : params) {
    total += p->squaredNorm();
  }
  return total;
}

AdamState AdamState::for_params(const ConstParamList& params, AdamOptions options) {
  AdamState state;
  state.options = options;
  state.first.reserve(params.size());
  state.second.reserve(params.size());
  for (const Matrix* p : params) {
    state.first.push_back(zeros_like(*p));
    state.second.push_back(zeros_like(*p));
  }
  return state;
}

void adam_step(const ParamList& params, const ConstParamList& grads, AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.first.size() ||
      params.size() != state.second.size()) {
    throw std::invalid_argument("adam_step: parameter/gradient/state count mismatch");
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    const Matrix& g = *grads[k];
    const Matrix& p = *params[k];
    if (g.rows() != p.rows() || g.cols() != p.cols() || state.first[k].rows() != p.rows() ||
        state.first[k].cols() != p.cols() || state.second[k].rows() != p.rows() ||
        state.second[k].cols() != p.cols()) {
      throw std::invalid_argument("adam_step: shape mismatch at parameter " + std::to_string(k));
    }
  }
  if (state.step < 0) {
    throw std::invalid_argument("adam_step: negative step counter");
  }

  const AdamOptions& opt = state.options;
  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double first_correction = 1.0 - std::pow(opt.beta1, t);
  const double second_correction = 1.0 - std::pow(opt.beta2, t);

  for (std::size_t k = 0; k < params.size(); ++k) {
    auto m = state.first[k].array();
    auto v = state.second[k].array();
    const auto g = grads[k]->array();
    m = opt.beta1 * m + (1.0 - opt.beta1) * g;
    v = opt.beta2 * v + (1.0 - opt.beta2) * g.square();
    params[k]->array() -=
        opt.learning_rate * (m / first_correction) / ((v / second_correction).sqrt() + opt.epsilon);
  }
}

GradCheckReport grad_check(const std::function<double()>& loss_fn, const ParamList& params,
                           const ConstParamList& analytic, double step, double rel_tol,
                           std::span<const std::string> names) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("grad_check: step must be positive");
  }
  if (params.size() != analytic.size()) {
    throw std::invalid_argument("grad_check: parameter/gradient count mismatch");
  }
  auto evaluate = [&]() {
    const double value = loss_fn();
    if (!std::isfinite(value)) {
      throw std::domain_error("grad_check: loss is not finite");
    }
    return value;
  };
  evaluate();

  GradCheckReport report;
  for (std::size_t k = 0; k < params.size(); ++k) {
    Matrix& p = *params[k];
    const Matrix& a = *analytic[k];
    if (a.rows() != p.rows() || a.cols() != p.cols()) {
      throw std::invalid_argument("grad_check: shape mismatch at parameter " + std::to_string(k));
    }
    GradCheckEntry entry;
    entry.name = k < names.size() ? names[k] : "param" + std::to_string(k);
    double* data = p.data();
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      const double saved = data[i];
      data[i] = saved + step;
      const double plus = evaluate();
      data[i] = saved - step;
      const double minus = evaluate();
      data[i] = saved;
      const double numeric = (plus - minus) / (2.0 * step);
      const double exact = a.data()[i];
      const double denom = std::max({std::abs(exact), std::abs(numeric), 1e-8});
      const double rel = std::abs(exact - numeric) / denom;
      if (i == 0 || rel > entry.max_rel_error) {
        entry.max_rel_error = rel;
        entry.worst_index = static_cast<std::size_t>(i);
        entry.analytic = exact;
        entry.numeric = numeric;
      }
    }
    entry.passed = entry.max_rel_error <= rel_tol;
    report.max_rel_error = std::max(report.max_rel_error, entry.max_rel_error);
    report.passed = report.passed && entry.passed;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace logad
