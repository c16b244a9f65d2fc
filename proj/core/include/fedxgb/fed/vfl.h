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

#ifndef FEDXGB_FED_VFL_H_
#define FEDXGB_FED_VFL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fedxgb/data/dataset.h"
#include "fedxgb/gbt/params.h"
#include "fedxgb/gbt/tree.h"
#include "fedxgb/orchestrator/bus.h"
#include "fedxgb/orchestrator/scanner.h"
#include "fedxgb/phe/paillier.h"

namespace fedxgb::fed {

// Participants of a feature-partitioned federation. Party index 0 is the
// active party (label owner); passive party k has index k + 1. Sample ids
// are assumed aligned across parties.
struct VflRoster {
  std::string active_id;
  std::vector<std::string> passive_ids;

  int num_parties() const { return 1 + static_cast<int>(passive_ids.size()); }
  const std::string& party(int index) const {
    return index == 0 ? active_id : passive_ids.at(index - 1);
  }
};

// Split details held by the party owning the feature.
struct SplitRecordEntry {
  int record_id = 0;
  int tree = 0;
  int node = 0;
  int feature_id = 0;
  int bin = 0;
  double threshold = 0.0;
};

struct VflModel {
  // Active-party trees. Internal nodes owned by a passive party have
  // owner_party > 0, a record id and a NaN threshold.
  gbt::BoostedEnsemble skeleton;
  // Lookup table of each passive party, indexed like roster.passive_ids.
  std::vector<std::vector<SplitRecordEntry>> passive_tables;
};

nlohmann::json ToJson(const VflModel& m);
VflModel VflModelFromJson(const nlohmann::json& j);

struct VflOptions {
  int key_bits = 1024;
  // Active-party keypair; generated from train.seed when absent.
  std::optional<phe::KeyPair> key;
  // Binning scope kPerNode (bins from the node's samples at the feature
  // owner) or kGlobal (bins from each owner's full column).
  gbt::TrainOptions train{0, gbt::BinningScope::kPerNode, gbt::BaseScoreInit::kFixed};
  bool record_secrets = false;
};

struct VflResult {
  VflModel model;
  std::vector<orchestrator::PartySecrets> secrets;  // when recorded
};

// Trains with the active party holding the key and the labels. Passive
// parties only see encrypted gradients and sample-id sets; they answer with
// encrypted per-bin sums and, for their own winning splits, the left sample
// set. Throws ProtocolError on any missing or malformed message and
// DataError for misaligned inputs.
VflResult VflTrain(orchestrator::MessageBus& bus, const VflRoster& roster,
                   const data::PartyDataset& active,
                   std::span<const data::PartyDataset> passives, const gbt::GbtParams& params,
                   const VflOptions& options);

// Federated inference for every row of `active_rows`. Passive parties
// answer left/right queries for their own nodes using their slice of the
// same samples (matched by sample id).
std::vector<double> VflPredict(orchestrator::MessageBus& bus, const VflRoster& roster,
                               const VflModel& model, const data::PartyDataset& active_rows,
                               std::span<const data::PartyDataset> passive_rows);

// Merges the passive tables into the skeleton. For audits and tests only:
// the result contains every party's thresholds.
gbt::BoostedEnsemble ResolveThresholds(const VflModel& model);

VflRoster DefaultVflRoster(std::span<const data::PartyDataset> parties);

}  // namespace fedxgb::fed

#endif  // FEDXGB_FED_VFL_H_
