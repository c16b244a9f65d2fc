// Copyright 2026 The fedxgb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FEDXGB_GBT_GRADIENTS_H_
#define FEDXGB_GBT_GRADIENTS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace fedxgb::gbt {

// First- and second-order derivatives of the loss w.r.t. the margin.
struct GradPair {
  double g = 0.0;
  double h = 0.0;
};

// The same pair in fixed point (see common/fixed_point.h).
struct QuantizedGrad {
  int64_t g = 0;
  int64_t h = 0;
};

double Sigmoid(double margin);

// Logistic loss derivatives: p = sigmoid(margin) clamped to
// [1e-15, 1 - 1e-15], g = p - y, h = p(1 - p).
GradPair LogisticGradients(int label, double margin);

// Logistic loss -[y log p + (1-y) log(1-p)] with the same clamp.
double LogisticLoss(int label, double margin);

std::vector<QuantizedGrad> Quantize(std::span<const GradPair> grads);

}  // namespace fedxgb::gbt

#endif  // FEDXGB_GBT_GRADIENTS_H_
