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

#include "fedxgb/common/fixed_point.h"

#include <cmath>
#include <string>

#include "fedxgb/common/errors.h"

namespace fedxgb {

int64_t QuantizeGrad(double x) {
  if (!std::isfinite(x) || std::fabs(x) >= 0x1.0p22) {
    throw EncodingError("gradient value out of fixed-point range: " +
                        std::to_string(x));
  }
  return std::llround(std::ldexp(x, kGradScaleBits));
}

double DequantizeGrad(int64_t q) {
  return std::ldexp(static_cast<double>(q), -kGradScaleBits);
}

}  // namespace fedxgb
