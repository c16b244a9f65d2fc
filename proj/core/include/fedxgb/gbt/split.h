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

#ifndef FEDXGB_GBT_SPLIT_H_
#define FEDXGB_GBT_SPLIT_H_

#include <optional>

#include "fedxgb/gbt/histogram.h"
#include "fedxgb/gbt/params.h"

namespace fedxgb::gbt {

// Two gains closer than kGainTolerance * max(1, |gain|) are treated as equal:
// the earlier candidate in (feature id, bin) order is kept. The same slack
// is required above min_split_gain, so a split whose gain is zero up to
// rounding never qualifies.
inline constexpr double kGainTolerance = 1e-10;

struct SplitCandidate {
  int feature = -1;     // local index in the histogram
  int feature_id = -1;  // global feature id
  int bin = -1;         // samples with bin <= this go left
  double gain = 0.0;
  HistSlot left;
  HistSlot right;
};

// sign(g) * max(|g| - alpha, 0).
double ThresholdL1(double g, double alpha);

// Second-order split gain
//   1/2 [T(G_L)^2/(H_L+l) + T(G_R)^2/(H_R+l) - T(G_L+G_R)^2/(H_L+H_R+l)] - gamma
// with T the L1 soft-threshold (identity for alpha = 0). A term whose
// denominator is zero contributes 0.
double SplitGain(double g_left, double h_left, double g_right, double h_right,
                 double lambda, double gamma, double alpha = 0.0);

// Optimal leaf weight -T(G)/(H + lambda). Throws DegenerateNodeError when
// H + lambda == 0.
double LeafWeight(double g, double h, double lambda, double alpha = 0.0);

// Per-leaf objective G w + 1/2 (H + lambda) w^2 + gamma, with the L1 term
// alpha |w| added when alpha > 0.
double LeafObjective(double g, double h, double w, double lambda, double gamma,
                     double alpha = 0.0);

// Scans every feature (ascending global id) and bin boundary (ascending) of
// the node histogram and returns the highest-gain split whose gain exceeds
// params.min_split_gain and whose children both hold at least one sample
// and a hessian sum of at least params.min_child_weight.
std::optional<SplitCandidate> FindBestSplit(const GradHistogram& hist,
                                            const GbtParams& params);

}  // namespace fedxgb::gbt

#endif  // FEDXGB_GBT_SPLIT_H_
