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

#ifndef FEDXGB_DATA_DATASET_H_
#define FEDXGB_DATA_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fedxgb::data {

struct FeatureDescriptor {
  std::string symbol;  // e.g. "G1", "O16"
  std::string unit;
  std::string description;

  bool operator==(const FeatureDescriptor&) const = default;
};

// Dense row-major matrix of doubles.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  double& at(size_t r, size_t c) { return values_[r * cols_ + c]; }
  double at(size_t r, size_t c) const { return values_[r * cols_ + c]; }

  std::span<const double> row(size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::vector<double> column(size_t c) const;

  void AppendRow(std::span<const double> row);
  const std::vector<double>& values() const { return values_; }

  bool operator==(const FeatureMatrix&) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> values_;
};

// One party's slice of the data: sample ids, a feature block and, for
// label owners, binary labels.
struct PartyDataset {
  std::string party_id;
  std::vector<int64_t> sample_ids;
  std::vector<FeatureDescriptor> features;
  // Global feature id of each column. Empty means 0..F-1.
  std::vector<int> feature_ids;
  FeatureMatrix x;
  std::optional<std::vector<int>> labels;

  size_t num_samples() const { return x.rows(); }
  size_t num_features() const { return x.cols(); }
  bool has_labels() const { return labels.has_value(); }
  int GlobalFeatureId(size_t column) const;

  // Checks shapes, finiteness, label domain and sample-id uniqueness.
  // Throws DataError.
  void Validate() const;

  PartyDataset SelectRows(std::span<const size_t> rows) const;
  // Index of the row holding `sample_id`, or -1.
  long RowOf(int64_t sample_id) const;

  bool operator==(const PartyDataset&) const = default;
};

// The 16 geological (G1..G16) and 16 operational (O1..O16) well features, in
// that order.
const std::vector<FeatureDescriptor>& WellFeatureSchema();

}  // namespace fedxgb::data

#endif  // FEDXGB_DATA_DATASET_H_
