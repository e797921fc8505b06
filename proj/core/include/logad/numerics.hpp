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
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace logad {

/// Dense row-major matrix of doubles. Weight matrices are stored out x in,
/// bias vectors as 1 x n rows.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Non-owning list of trainable parameters, in a fixed order shared by the
/// matching gradient list.
using ParamList = std::vector<Matrix*>;
using ConstParamList = std::vector<const Matrix*>;

// Activations. sigmoid is evaluated in a form that never overflows; for
// |x| > ~37 it saturates to exactly 0 or 1 in double precision.
double sigmoid(double x) noexcept;
Vector sigmoid(const Vector& x);
Matrix sigmoid(const Matrix& x);
Vector tanh_act(const Vector& x);
Matrix tanh_act(const Matrix& x);

/// Max-subtracted softmax. Throws std::invalid_argument on an empty vector.
Vector softmax(const Vector& x);
/// Column-wise softmax, one distribution per column.
Matrix softmax_columns(const Matrix& logits);

/// Matrix of zeros with the same shape as `like`.
inline Matrix zeros_like(const Matrix& like) { return Matrix::Zero(like.rows(), like.cols()); }

bool all_finite(const Matrix& m) noexcept;

/// Sum of squares over a parameter list.
double squared_norm(const ConstParamList& params);

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Moment accumulators for a fixed parameter list. `first` and `second` hold
/// one matrix per parameter, matching its shape.
struct AdamState {
  AdamOptions options;
  std::vector<Matrix> first;
  std::vector<Matrix> second;
  std::int64_t step = 0;

  static AdamState for_params(const ConstParamList& params, AdamOptions options = {});
};

/// One bias-corrected ADAM update applied in place. Throws
/// std::invalid_argument when the parameter, gradient and state shapes
/// disagree.
void adam_step(const ParamList& params, const ConstParamList& grads, AdamState& state);

struct GradCheckEntry {
  std::string name;
  double max_rel_error = 0.0;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  bool passed = true;
};

struct GradCheckReport {
  std::vector<GradCheckEntry> entries;
  double max_rel_error = 0.0;
  bool passed = true;
};

/// Compares analytic gradients against central finite differences
/// (f(p+h) - f(p-h)) / 2h, one parameter element at a time. `loss_fn` reads
/// the parameters through the pointers in `params`, which are perturbed in
/// place and restored bit-exactly afterwards. The relative error of an
/// element is |a - n| / max(|a|, |n|, 1e-8).
///
/// Throws std::invalid_argument for step <= 0 or mismatched shapes and
/// std::domain_error when the loss evaluates to a non-finite value.
GradCheckReport grad_check(const std::function<double()>& loss_fn, const ParamList& params,
                           const ConstParamList& analytic, double step, double rel_tol,
                           std::span<const std::string> names = {});

}  // namespace logad
