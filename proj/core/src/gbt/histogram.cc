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

#include "fedxgb/gbt/histogram.h"

#include <string>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/fixed_point.h"

namespace fedxgb::gbt {

double HistSlot::G() const { return DequantizeGrad(g); }
double HistSlot::H() const { return DequantizeGrad(h); }

GradHistogram::GradHistogram(std::vector<int> feature_ids, int num_bins)
    : feature_ids_(std::move(feature_ids)),
      num_bins_(num_bins),
      slots_(feature_ids_.size() * static_cast<size_t>(num_bins)) {}

void GradHistogram::AddSample(std::span<const int> bins,
                              const QuantizedGrad& grad) {
  const HistSlot s{grad.g, grad.h, 1};
  for (int f = 0; f < num_features(); ++f) at(f, bins[f]) += s;
  total_ += s;
}

void GradHistogram::CheckShape(const GradHistogram& o) const {
  if (num_bins_ != o.num_bins_ || feature_ids_ != o.feature_ids_) {
    throw ConsistencyError("histogram shapes do not match");
  }
}

GradHistogram& GradHistogram::operator+=(const GradHistogram& o) {
  CheckShape(o);
  for (size_t i = 0; i < slots_.size(); ++i) slots_[i] += o.slots_[i];
  total_ += o.total_;
  return *this;
}

GradHistogram& GradHistogram::operator-=(const GradHistogram& o) {
  CheckShape(o);
  for (size_t i = 0; i < slots_.size(); ++i) slots_[i] -= o.slots_[i];
  total_ -= o.total_;
  return *this;
}

void GradHistogram::AppendFeatures(const GradHistogram& o) {
  if (num_features() > 0 && o.num_features() > 0 && o.num_bins_ != num_bins_) {
    throw ConsistencyError("cannot append histograms with different bin counts");
  }
  if (num_features() == 0) num_bins_ = o.num_bins_;
  feature_ids_.insert(feature_ids_.end(), o.feature_ids_.begin(),
                      o.feature_ids_.end());
  slots_.insert(slots_.end(), o.slots_.begin(), o.slots_.end());
}

GradHistogram BuildHistogram(const BinnedRows& binned,
                             std::span<const QuantizedGrad> grads,
                             std::span<const int> rows,
                             std::vector<int> feature_ids, int num_bins) {
  if (static_cast<int>(feature_ids.size()) != binned.num_features) {
    throw ConsistencyError("feature id count does not match binned columns");
  }
  GradHistogram hist(std::move(feature_ids), num_bins);
  for (int r : rows) {
    auto bins = binned.row(r);
    for (int b : bins) {
      if (b < 0 || b >= num_bins) {
        throw ConsistencyError("bin index " + std::to_string(b) +
                               " out of range");
      }
    }
    hist.AddSample(bins, grads[r]);
  }
  return hist;
}

GradHistogram SiblingBySubtraction(const GradHistogram& parent,
                                   const GradHistogram& child) {
  GradHistogram out = parent;
  out -= child;
  if (out.total().count < 0) {
    throw ConsistencyError("sibling subtraction produced a negative count");
  }
  for (const HistSlot& s : out.slots()) {
    if (s.count < 0) {
      throw ConsistencyError("sibling subtraction produced a negative count");
    }
  }
  return out;
}

}  // namespace fedxgb::gbt
