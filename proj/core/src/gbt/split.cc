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

#include "fedxgb/gbt/split.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fedxgb/common/errors.h"

namespace fedxgb::gbt {
namespace {

double ScoreTerm(double g, double h, double lambda, double alpha) {
  const double denom = h + lambda;
  if (denom == 0.0) return 0.0;
  const double t = ThresholdL1(g, alpha);
  return t * t / denom;
}

bool Exceeds(double gain, double reference) {
  return gain > reference + kGainTolerance * std::max(1.0, std::fabs(reference));
}

}  // namespace

double ThresholdL1(double g, double alpha) {
  if (alpha <= 0.0) return g;
  if (g > alpha) return g - alpha;
  if (g < -alpha) return g + alpha;
  return 0.0;
}

double SplitGain(double g_left, double h_left, double g_right, double h_right,
                 double lambda, double gamma, double alpha) {
  return 0.5 * (ScoreTerm(g_left, h_left, lambda, alpha) +
                ScoreTerm(g_right, h_right, lambda, alpha) -
                ScoreTerm(g_left + g_right, h_left + h_right, lambda, alpha)) -
         gamma;
}

double LeafWeight(double g, double h, double lambda, double alpha) {
  const double denom = h + lambda;
  if (denom == 0.0) {
    throw DegenerateNodeError("leaf weight undefined: H + lambda == 0");
  }
  return -ThresholdL1(g, alpha) / denom;
}

double LeafObjective(double g, double h, double w, double lambda, double gamma,
                     double alpha) {
  return g * w + 0.5 * (h + lambda) * w * w + alpha * std::fabs(w) + gamma;
}

std::optional<SplitCandidate> FindBestSplit(const GradHistogram& hist,
                                            const GbtParams& params) {
  std::vector<int> order(hist.num_features());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return hist.feature_ids()[a] < hist.feature_ids()[b];
  });

  const HistSlot& total = hist.total();
  std::optional<SplitCandidate> best;
  for (int f : order) {
    HistSlot left;
    for (int b = 0; b + 1 < hist.num_bins(); ++b) {
      left += hist.at(f, b);
      const HistSlot right = total - left;
      if (left.count == 0 || right.count == 0) continue;
      const double hl = left.H();
      const double hr = right.H();
      if (hl < params.min_child_weight || hr < params.min_child_weight) continue;
      const double gain = SplitGain(left.G(), hl, right.G(), hr,
                                    params.reg_lambda, params.gamma,
                                    params.reg_alpha);
      if (!Exceeds(gain, params.min_split_gain)) continue;
      if (best.has_value() && !Exceeds(gain, best->gain)) continue;
      best = SplitCandidate{f, hist.feature_ids()[f], b, gain, left, right};
    }
  }
  return best;
}

}  // namespace fedxgb::gbt
