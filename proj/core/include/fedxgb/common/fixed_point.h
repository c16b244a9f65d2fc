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

#ifndef FEDXGB_COMMON_FIXED_POINT_H_
#define FEDXGB_COMMON_FIXED_POINT_H_

#include <cstdint>

namespace fedxgb {

// Gradient statistics are accumulated as signed 64-bit fixed-point integers
// with this many fractional bits. Sums are then exact and order-independent,
// and every training path (centralized, sample-partitioned, feature-
// partitioned) aggregates the very same integers.
inline constexpr int kGradScaleBits = 40;

// round(x * 2^kGradScaleBits). Throws EncodingError if |x| >= 2^22.
int64_t QuantizeGrad(double x);

// q * 2^-kGradScaleBits.
double DequantizeGrad(int64_t q);

}  // namespace fedxgb

#endif  // FEDXGB_COMMON_FIXED_POINT_H_
