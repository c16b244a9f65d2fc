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

#ifndef FEDXGB_GBT_HISTOGRAM_H_
#define FEDXGB_GBT_HISTOGRAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "fedxgb/gbt/gradients.h"

namespace fedxgb::gbt {

// Sum of fixed-point gradients and a sample count.
struct HistSlot {
  int64_t g = 0;
  int64_t h = 0;
  int64_t count = 0;

  double G() const;
  double H() const;

  HistSlot& operator+=(const HistSlot& o) {
    g += o.g;
    h += o.h;
    count += o.count;
    return *this;
  }
  HistSlot& operator-=(const HistSlot& o) {
    g -= o.g;
    h -= o.h;
    count -= o.count;
    return *this;
  }
  bool operator==(const HistSlot&) const = default;
};

inline HistSlot operator+(HistSlot a, const HistSlot& b) { return a += b; }
inline HistSlot operator-(HistSlot a, const HistSlot& b) { return a -= b; }

// Per-feature, per-bin gradient sums over one node's samples, plus the node
// totals. Features are addressed by local index; feature_ids() maps them to
// global feature ids (used for split tie-breaking and ownership).
class GradHistogram {
 public:
  GradHistogram() = default;
  GradHistogram(std::vector<int> feature_ids, int num_bins);

  int num_features() const { return static_cast<int>(feature_ids_.size()); }
  int num_bins() const { return num_bins_; }
  const std::vector<int>& feature_ids() const { return feature_ids_; }

  HistSlot& at(int feature, int bin) { return slots_[Index(feature, bin)]; }
  const HistSlot& at(int feature, int bin) const {
    return slots_[Index(feature, bin)];
  }
  std::span<const HistSlot> feature(int f) const {
    return {slots_.data() + static_cast<size_t>(f) * num_bins_,
            static_cast<size_t>(num_bins_)};
  }
  std::span<HistSlot> mutable_slots() { return slots_; }
  std::span<const HistSlot> slots() const { return slots_; }

  HistSlot& total() { return total_; }
  const HistSlot& total() const { return total_; }

  // Adds one sample's gradients to `bin` of every feature (bins[f]) and to
  // the totals.
  void AddSample(std::span<const int> bins, const QuantizedGrad& grad);

  // Slot-wise arithmetic. Shapes and feature ids must match
  // (ConsistencyError otherwise).
  GradHistogram& operator+=(const GradHistogram& o);
  GradHistogram& operator-=(const GradHistogram& o);

  // Concatenates the features of `o` after this histogram's features.
  // Totals are kept from *this.
  void AppendFeatures(const GradHistogram& o);

  bool operator==(const GradHistogram&) const = default;

 private:
  size_t Index(int f, int b) const {
    return static_cast<size_t>(f) * num_bins_ + b;
  }
  void CheckShape(const GradHistogram& o) const;

  std::vector<int> feature_ids_;
  int num_bins_ = 0;
  std::vector<HistSlot> slots_;
  HistSlot total_;
};

// Bin index of every (row, feature) pair, row-major.
struct BinnedRows {
  int num_features = 0;
  std::vector<int> bins;

  std::span<const int> row(size_t r) const {
    return {bins.data() + r * num_features, static_cast<size_t>(num_features)};
  }
};

// Histogram over `rows` (indices into binned/grads). An empty row set gives
// the all-zero histogram.
GradHistogram BuildHistogram(const BinnedRows& binned,
                             std::span<const QuantizedGrad> grads,
                             std::span<const int> rows,
                             std::vector<int> feature_ids, int num_bins);

// parent - child. Throws ConsistencyError if any resulting count is negative
// (the child was not a subset of the parent).
GradHistogram SiblingBySubtraction(const GradHistogram& parent,
                                   const GradHistogram& child);

}  // namespace fedxgb::gbt

#endif  // FEDXGB_GBT_HISTOGRAM_H_
