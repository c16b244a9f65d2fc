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

#ifndef FEDXGB_DATA_PARTITION_H_
#define FEDXGB_DATA_PARTITION_H_

#include <span>
#include <string>
#include <vector>

#include "fedxgb/data/dataset.h"

namespace fedxgb::data {

// Sample-partitioned parties: all must share the same feature schema.
// Returns validated copies. Throws DataError on schema mismatch.
std::vector<PartyDataset> HorizontalPartition(std::span<const PartyDataset> parties);

// Row-wise concatenation of parties with identical schemas.
PartyDataset HorizontalUnion(std::span<const PartyDataset> parties,
                             const std::string& party_id = "union");

// Feature assignment for a feature-partitioned federation. Party 0 of the
// default split is the label owner.
struct VerticalSplit {
  std::vector<std::string> party_ids;
  std::vector<std::vector<std::string>> symbols;  // per party
  int label_party = 0;
};

// Operational features O1..O16 and the label to "oil_company" (active),
// geological G1..G16 to "exploration_institute" (passive).
VerticalSplit DefaultVerticalSplit();

// Splits a joined dataset by feature. Each party keeps the joined column
// indices as global feature ids; only the label party keeps labels. Throws
// DataError if a symbol is assigned twice or unknown.
std::vector<PartyDataset> VerticalPartition(const PartyDataset& joined,
                                            const VerticalSplit& split);

// Inverse of VerticalPartition: columns ordered by global feature id, rows
// in the order of the first party, labels from whichever party has them.
PartyDataset VerticalRejoin(std::span<const PartyDataset> parties,
                            const std::string& party_id = "joined");

}  // namespace fedxgb::data

#endif  // FEDXGB_DATA_PARTITION_H_
