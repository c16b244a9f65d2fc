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

#ifndef FEDXGB_DATA_CSV_H_
#define FEDXGB_DATA_CSV_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "fedxgb/data/dataset.h"

namespace fedxgb::data {

// CSV layout: a header `well_id,<symbol>...[,label]` followed by one row per
// well. Feature columns may be any subset of `schema`, in any order; each
// column's global feature id is its position in `schema`. Cells are decimal
// numbers. Throws DataError naming the row and column of the first problem
// (unknown column, blank or non-numeric cell, bad label, empty file).
PartyDataset ParseCsv(std::istream& in,
                      const std::vector<FeatureDescriptor>& schema,
                      const std::string& party_id = "");
PartyDataset LoadCsv(const std::string& path,
                     const std::vector<FeatureDescriptor>& schema,
                     const std::string& party_id = "");

// Writes values with 17 significant digits so that reloading is exact.
void WriteCsv(std::ostream& out, const PartyDataset& data);
void SaveCsv(const std::string& path, const PartyDataset& data);

}  // namespace fedxgb::data

#endif  // FEDXGB_DATA_CSV_H_
