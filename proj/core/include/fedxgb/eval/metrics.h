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

#ifndef FEDXGB_EVAL_METRICS_H_
#define FEDXGB_EVAL_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fedxgb::eval {

struct ConfusionMatrix {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  int64_t tn = 0;

  int64_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

struct MetricReport {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double fpr_standard = 0.0;  // FP / (FP + TN)
  double fpr_alt = 0.0;       // FP / (FP + FN)
  double auc = 0.0;
  int fold = -1;  // -1 for averages
  std::string tag;
};

// Prediction is positive when probability >= threshold. Throws DataError on
// empty or mismatched input or labels outside {0, 1}.
ConfusionMatrix Confusion(std::span<const int> labels, std::span<const double> probabilities,
                          double threshold = 0.5);

// Thresholded metrics; zero denominators yield 0. auc is left at 0.
MetricReport ComputeMetrics(const ConfusionMatrix& cm);

// Mann-Whitney AUC with ties counted 1/2 (average ranks). Throws DataError
// unless both classes are present.
double AucRoc(std::span<const int> labels, std::span<const double> scores);

// Confusion at 0.5 plus AUC.
MetricReport Evaluate(std::span<const int> labels, std::span<const double> probabilities,
                      int fold = -1, const std::string& tag = "");

// Arithmetic mean of every metric; fold = -1.
MetricReport Average(std::span<const MetricReport> reports, const std::string& tag = "");

nlohmann::json ToJson(const MetricReport& r);

}  // namespace fedxgb::eval

#endif  // FEDXGB_EVAL_METRICS_H_
