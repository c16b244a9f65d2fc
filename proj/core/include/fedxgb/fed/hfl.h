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

#ifndef FEDXGB_FED_HFL_H_
#define FEDXGB_FED_HFL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fedxgb/data/dataset.h"
#include "fedxgb/fed/secagg.h"
#include "fedxgb/gbt/binning.h"
#include "fedxgb/gbt/params.h"
#include "fedxgb/gbt/tree.h"
#include "fedxgb/orchestrator/bus.h"
#include "fedxgb/orchestrator/scanner.h"
#include "fedxgb/phe/paillier.h"

namespace fedxgb::fed {

// Participants of a sample-partitioned federation.
struct HflRoster {
  std::string server_id = "server";
  std::vector<std::string> client_ids;
  std::vector<int64_t> sample_counts;
  PairSeeds pair_seeds;

  // Throws ConfigError: no clients, duplicate ids, empty clients or a
  // missing pair seed.
  void Validate() const;
};

HflRoster MakeHflRoster(std::span<const data::PartyDataset> clients, uint64_t seed,
                        const std::string& server_id = "server");

struct HflOptions {
  SecAggMode mode = SecAggMode::kPaillierMask;
  int key_bits = 1024;
  // Server keypair; generated from train.seed when absent.
  std::optional<phe::KeyPair> key;
  // Only global binning is supported.
  gbt::TrainOptions train;
  // Keep every client's unmasked slot sums for transcript auditing.
  bool record_secrets = false;
};

struct HflResult {
  gbt::BoostedEnsemble model;                       // server copy
  std::vector<gbt::BoostedEnsemble> client_models;  // as delivered
  std::vector<gbt::BinBoundaries> bins;
  std::vector<orchestrator::PartySecrets> secrets;  // when recorded
};

struct FeatureRange {
  double min = 0.0;
  double max = 0.0;
};

// Per feature: the min of the clients' minima and max of their maxima,
// split into max_bin equal-width bins. Throws ProtocolError when the
// clients disagree on the number of features.
std::vector<gbt::BinBoundaries> GlobalBinning(
    std::span<const std::vector<FeatureRange>> client_ranges, int max_bin);

// Trains a boosted ensemble over the clients' datasets. The server
// generates the Paillier key, derives global bins from the reported feature
// ranges, aggregates masked histograms for every requested node, picks the
// splits and delivers the final ensemble to every client. Labels, raw
// features and unmasked gradient sums never leave a client. Any missing or
// malformed message aborts with a ProtocolError.
HflResult HflTrain(orchestrator::MessageBus& bus, const HflRoster& roster,
                   std::span<const data::PartyDataset> clients, const gbt::GbtParams& params,
                   const HflOptions& options);

}  // namespace fedxgb::fed

#endif  // FEDXGB_FED_HFL_H_
