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

#include "fedxgb/data/dataset.h"

#include <cmath>
#include <string>
#include <unordered_set>

#include "fedxgb/common/errors.h"

namespace fedxgb::data {

std::vector<double> FeatureMatrix::column(size_t c) const {
  std::vector<double> out(rows_);
  for (size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

void FeatureMatrix::AppendRow(std::span<const double> row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw DataError("row width mismatch");
  values_.insert(values_.end(), row.begin(), row.end());
  ++rows_;
}

int PartyDataset::GlobalFeatureId(size_t column) const {
  return feature_ids.empty() ? static_cast<int>(column)
                             : feature_ids.at(column);
}

void PartyDataset::Validate() const {
  if (sample_ids.size() != x.rows()) {
    throw DataError(party_id + ": sample id count does not match row count");
  }
  if (!features.empty() && features.size() != x.cols()) {
    throw DataError(party_id + ": feature descriptor count mismatch");
  }
  if (!feature_ids.empty() && feature_ids.size() != x.cols()) {
    throw DataError(party_id + ": feature id count mismatch");
  }
  for (size_t r = 0; r < x.rows(); ++r) {
    for (size_t c = 0; c < x.cols(); ++c) {
      if (!std::isfinite(x.at(r, c))) {
        throw DataError(party_id + ": missing or non-finite value at row " +
                        std::to_string(r + 1) + ", column " +
                        std::to_string(c + 1));
      }
    }
  }
  if (labels.has_value()) {
    if (labels->size() != x.rows()) {
      throw DataError(party_id + ": label count does not match row count");
    }
    for (int y : *labels) {
      if (y != 0 && y != 1) throw DataError(party_id + ": labels must be 0/1");
    }
  }
  std::unordered_set<int64_t> seen;
  for (int64_t id : sample_ids) {
    if (!seen.insert(id).second) {
      throw DataError(party_id + ": duplicate sample id " + std::to_string(id));
    }
  }
}

PartyDataset PartyDataset::SelectRows(std::span<const size_t> rows) const {
  PartyDataset out;
  out.party_id = party_id;
  out.features = features;
  out.feature_ids = feature_ids;
  out.x = FeatureMatrix(0, x.cols());
  if (labels.has_value()) out.labels.emplace();
  for (size_t r : rows) {
    out.sample_ids.push_back(sample_ids.at(r));
    out.x.AppendRow(x.row(r));
    if (labels.has_value()) out.labels->push_back(labels->at(r));
  }
  return out;
}

long PartyDataset::RowOf(int64_t sample_id) const {
  for (size_t r = 0; r < sample_ids.size(); ++r) {
    if (sample_ids[r] == sample_id) return static_cast<long>(r);
  }
  return -1;
}

const std::vector<FeatureDescriptor>& WellFeatureSchema() {
  static const std::vector<FeatureDescriptor> kSchema = {
      {"G1", "m", "Total horizontal section length (HSL)"},
      {"G2", "m", "HSL in section 'Jiancaogou'"},
      {"G3", "m", "HSL in section 1"},
      {"G4", "m", "HSL in section 2"},
      {"G5", "m", "HSL in section 3"},
      {"G6", "m", "HSL in section 4"},
      {"G7", "m", "HSL in section 5"},
      {"G8", "m", "HSL in sections 6, 7, 8 and 9"},
      {"G9", "m", "Total HSL in sections 1 and 3"},
      {"G10", "-", "Ordinate of the wellhead"},
      {"G11", "-", "Abscissa of the wellhead"},
      {"G12", "m", "Middle depth of the well"},
      {"G13", "%", "Porosity of reservoir"},
      {"G14", "%", "Total organic carbon of reservoir"},
      {"G15", "-", "Formation pressure coefficient"},
      {"G16", "MPa", "Mean fracture pressure"},
      {"O1", "m3", "Content of slick water in fracturing fluid"},
      {"O2", "m3", "Content of guanidine gum in fracturing fluid"},
      {"O3", "m3", "Total content of liquid in fracturing fluid"},
      {"O4", "m3", "Total content of quartz sand in fracturing fluid"},
      {"O5", "m3", "Average content of quartz sand in fracturing fluid"},
      {"O6", "m3", "Average content of quartz sand in sections"},
      {"O7", "m3", "Average content of liquid in sections"},
      {"O8", "m3", "Average content of liquid in clusters"},
      {"O9", "m3", "Content of 30-50 mesh proppant"},
      {"O10", "m3", "Content of 40-70 mesh proppant"},
      {"O11", "m3", "Content of 70-140 mesh proppant"},
      {"O12", "-", "Average ratio of quartz sand"},
      {"O13", "-", "Cluster number of perforations"},
      {"O14", "MPa", "Mean pump pressure"},
      {"O15", "m", "Average length of fracturing stages"},
      {"O16", "-", "Fracturing stages"},
  };
  return kSchema;
}

}  // namespace fedxgb::data
