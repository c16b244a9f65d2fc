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

#ifndef FEDXGB_GBT_BINNING_H_
#define FEDXGB_GBT_BINNING_H_

#include <span>
#include <vector>

namespace fedxgb::gbt {

// Equal-width bin boundaries for one feature: B-1 nondecreasing thresholds.
// A value x falls into the first bin b whose threshold t_b satisfies
// x <= t_b, or into bin B-1 if it exceeds every threshold. Consequently
// bin(x) <= b  <=>  x <= t_b, which is what split thresholds rely on.
class BinBoundaries {
 public:
  BinBoundaries() = default;
  BinBoundaries(int feature_id, std::vector<double> thresholds);

  int Bin(double x) const;
  int num_bins() const { return static_cast<int>(thresholds_.size()) + 1; }
  int feature_id() const { return feature_id_; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  // Threshold separating bins <= b from bins > b.
  double threshold(int b) const { return thresholds_.at(b); }

  bool operator==(const BinBoundaries&) const = default;

 private:
  int feature_id_ = 0;
  std::vector<double> thresholds_;
};

// Thresholds lo + (hi - lo) * k / B for k = 1..B-1. A degenerate range
// (lo == hi) places every value in bin 0.
BinBoundaries BinsFromRange(double lo, double hi, int max_bin,
                            int feature_id = 0);

// BinsFromRange over the column's (min, max). Throws DataError on an empty
// column and ConfigError for max_bin < 2.
BinBoundaries ComputeBins(std::span<const double> column, int max_bin,
                          int feature_id = 0);

}  // namespace fedxgb::gbt

#endif  // FEDXGB_GBT_BINNING_H_
