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

#include "fedxgb/gbt/binning.h"

#include <algorithm>

#include "fedxgb/common/errors.h"

namespace fedxgb::gbt {

BinBoundaries::BinBoundaries(int feature_id, std::vector<double> thresholds)
    : feature_id_(feature_id), thresholds_(std::move(thresholds)) {}

int BinBoundaries::Bin(double x) const {
  auto it = std::lower_bound(thresholds_.begin(), thresholds_.end(), x);
  return static_cast<int>(it - thresholds_.begin());
}

BinBoundaries BinsFromRange(double lo, double hi, int max_bin, int feature_id) {
  if (max_bin < 2) throw ConfigError("max_bin must be >= 2");
  if (hi < lo) throw DataError("bin range has hi < lo");
  std::vector<double> t(max_bin - 1);
  const double width = hi - lo;
  for (int k = 1; k < max_bin; ++k) {
    t[k - 1] = lo + width * k / max_bin;
  }
  return BinBoundaries(feature_id, std::move(t));
}

BinBoundaries ComputeBins(std::span<const double> column, int max_bin,
                          int feature_id) {
  if (column.empty()) throw DataError("cannot bin an empty column");
  auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  return BinsFromRange(*lo, *hi, max_bin, feature_id);
}

}  // namespace fedxgb::gbt
