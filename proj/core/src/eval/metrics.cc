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

#include "fedxgb/eval/metrics.h"

#include <algorithm>
#include <numeric>

#include "fedxgb/common/errors.h"

namespace fedxgb::eval {
namespace {

double Ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

void CheckLabels(std::span<const int> labels, size_t n) {
  if (labels.empty()) throw DataError("metrics: empty input");
  if (labels.size() != n) throw DataError("metrics: labels and scores differ in length");
  for (int y : labels) {
    if (y != 0 && y != 1) throw DataError("metrics: labels must be 0/1");
  }
}

}  // namespace

ConfusionMatrix Confusion(std::span<const int> labels, std::span<const double> probabilities,
                          double threshold) {
  CheckLabels(labels, probabilities.size());
  ConfusionMatrix cm;
  for (size_t i = 0; i < labels.size(); ++i) {
    bool pred = probabilities[i] >= threshold;
    if (labels[i] == 1) {
      ++(pred ? cm.tp : cm.fn);
    } else {
      ++(pred ? cm.fp : cm.tn);
    }
  }
  return cm;
}

MetricReport ComputeMetrics(const ConfusionMatrix& cm) {
  const double tp = cm.tp, fp = cm.fp, fn = cm.fn, tn = cm.tn;
  MetricReport r;
  r.accuracy = Ratio(tp + tn, tp + fp + fn + tn);
  r.precision = Ratio(tp, tp + fp);
  r.recall = Ratio(tp, tp + fn);
  r.f1 = Ratio(2.0 * r.precision * r.recall, r.precision + r.recall);
  r.fpr_standard = Ratio(fp, fp + tn);
  r.fpr_alt = Ratio(fp, fp + fn);
  return r;
}

double AucRoc(std::span<const int> labels, std::span<const double> scores) {
  CheckLabels(labels, scores.size());
  const size_t n = labels.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });
  // Sum of midranks of the positives.
  double rank_sum = 0.0;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t t = i; t <= j; ++t) {
      if (labels[order[t]] == 1) rank_sum += midrank;
    }
    i = j + 1;
  }
  double pos = std::count(labels.begin(), labels.end(), 1);
  double neg = static_cast<double>(n) - pos;
  if (pos == 0.0 || neg == 0.0) {
    throw DataError("AUC is undefined when only one class is present");
  }
  return (rank_sum - pos * (pos + 1.0) / 2.0) / (pos * neg);
}

MetricReport Evaluate(std::span<const int> labels, std::span<const double> probabilities,
                      int fold, const std::string& tag) {
  MetricReport r = ComputeMetrics(Confusion(labels, probabilities));
  r.auc = AucRoc(labels, probabilities);
  r.fold = fold;
  r.tag = tag;
  return r;
}

MetricReport Average(std::span<const MetricReport> reports, const std::string& tag) {
  if (reports.empty()) throw DataError("metrics: nothing to average");
  MetricReport m;
  for (const auto& r : reports) {
    m.accuracy += r.accuracy;
    m.precision += r.precision;
    m.recall += r.recall;
    m.f1 += r.f1;
    m.fpr_standard += r.fpr_standard;
    m.fpr_alt += r.fpr_alt;
    m.auc += r.auc;
  }
  const double k = static_cast<double>(reports.size());
  m.accuracy /= k;
  m.precision /= k;
  m.recall /= k;
  m.f1 /= k;
  m.fpr_standard /= k;
  m.fpr_alt /= k;
  m.auc /= k;
  m.tag = tag.empty() ? reports.front().tag : tag;
  return m;
}

nlohmann::json ToJson(const MetricReport& r) {
  return {{"tag", r.tag},
          {"fold", r.fold},
          {"auc", r.auc},
          {"accuracy", r.accuracy},
          {"precision", r.precision},
          {"recall", r.recall},
          {"f1", r.f1},
          {"fpr_standard", r.fpr_standard},
          {"fpr_alt", r.fpr_alt}};
}

}  // namespace fedxgb::eval
