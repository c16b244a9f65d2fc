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

#ifndef FEDXGB_TESTING_ORACLES_H_
#define FEDXGB_TESTING_ORACLES_H_

// Deliberately naive reference implementations used to check the library.

#include <cstdint>
#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace fedxgb::testing {

struct NaiveMetrics {
  double accuracy, precision, recall, f1, fpr_standard, fpr_alt;
};

inline NaiveMetrics NaiveThresholded(const std::vector<int>& y, const std::vector<double>& p) {
  double tp = 0, fp = 0, fn = 0, tn = 0;
  for (size_t i = 0; i < y.size(); ++i) {
    const bool pos = p[i] >= 0.5;
    if (pos && y[i] == 1) tp += 1;
    if (pos && y[i] == 0) fp += 1;
    if (!pos && y[i] == 1) fn += 1;
    if (!pos && y[i] == 0) tn += 1;
  }
  auto div = [](double a, double b) { return b == 0 ? 0.0 : a / b; };
  NaiveMetrics m;
  m.accuracy = div(tp + tn, tp + fp + fn + tn);
  m.precision = div(tp, tp + fp);
  m.recall = div(tp, tp + fn);
  m.f1 = div(2 * m.precision * m.recall, m.precision + m.recall);
  m.fpr_standard = div(fp, fp + tn);
  m.fpr_alt = div(fp, fp + fn);
  return m;
}

// Fraction of (positive, negative) pairs ranked correctly, ties 1/2.
inline double PairwiseAuc(const std::vector<int>& y, const std::vector<double>& s) {
  double wins = 0, pairs = 0;
  for (size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 1) continue;
    for (size_t j = 0; j < y.size(); ++j) {
      if (y[j] != 0) continue;
      pairs += 1;
      if (s[i] > s[j]) wins += 1;
      if (s[i] == s[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

// Exhaustive split search over raw (bin-valued) features: every feature,
// every bin cut, left = bin <= cut. Gain without L1.
struct NaiveSplit {
  int feature = -1;
  int bin = -1;
  double gain = 0.0;
};

inline std::optional<NaiveSplit> BruteForceSplit(const std::vector<std::vector<int>>& bins,
                                                 const std::vector<double>& g,
                                                 const std::vector<double>& h, int num_bins,
                                                 double lambda, double gamma, double mcw) {
  std::optional<NaiveSplit> best;
  const size_t n = g.size();
  auto score = [&](double G, double H) { return H + lambda == 0 ? 0.0 : G * G / (H + lambda); };
  for (size_t f = 0; f < bins.size(); ++f) {
    for (int cut = 0; cut + 1 < num_bins; ++cut) {
      double gl = 0, hl = 0, gr = 0, hr = 0;
      int nl = 0, nr = 0;
      for (size_t i = 0; i < n; ++i) {
        if (bins[f][i] <= cut) {
          gl += g[i];
          hl += h[i];
          ++nl;
        } else {
          gr += g[i];
          hr += h[i];
          ++nr;
        }
      }
      if (nl == 0 || nr == 0 || hl < mcw || hr < mcw) continue;
      const double gain =
          0.5 * (score(gl, hl) + score(gr, hr) - score(gl + gr, hl + hr)) - gamma;
      if (!(gain > 1e-10 * std::max(1.0, std::abs(gain)))) continue;
      if (!best || gain > best->gain + 1e-10 * std::max(1.0, std::abs(best->gain))) {
        best = NaiveSplit{static_cast<int>(f), cut, gain};
      }
    }
  }
  return best;
}

}  // namespace fedxgb::testing

#endif  // FEDXGB_TESTING_ORACLES_H_
