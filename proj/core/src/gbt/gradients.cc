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

#include "fedxgb/gbt/gradients.h"

#include <algorithm>
#include <cmath>

#include "fedxgb/common/fixed_point.h"

namespace fedxgb::gbt {
namespace {

constexpr double kProbEps = 1e-15;

double ClampedProbability(double margin) {
  return std::clamp(Sigmoid(margin), kProbEps, 1.0 - kProbEps);
}

}  // namespace

double Sigmoid(double margin) {
  if (margin >= 0.0) return 1.0 / (1.0 + std::exp(-margin));
  const double e = std::exp(margin);
  return e / (1.0 + e);
}

GradPair LogisticGradients(int label, double margin) {
  const double p = ClampedProbability(margin);
  return GradPair{p - static_cast<double>(label), p * (1.0 - p)};
}

double LogisticLoss(int label, double margin) {
  const double p = ClampedProbability(margin);
  return label == 1 ? -std::log(p) : -std::log(1.0 - p);
}

std::vector<QuantizedGrad> Quantize(std::span<const GradPair> grads) {
  std::vector<QuantizedGrad> out;
  out.reserve(grads.size());
  for (const GradPair& gp : grads) {
    out.push_back({QuantizeGrad(gp.g), QuantizeGrad(gp.h)});
  }
  return out;
}

}  // namespace fedxgb::gbt
