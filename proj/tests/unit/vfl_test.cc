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

#include <cmath>

#include <gtest/gtest.h>

#include "fedxgb/common/errors.h"
#include "fedxgb/data/partition.h"
#include "fedxgb/fed/vfl.h"
#include "fedxgb/gbt/trainer.h"
#include "fedxgb/orchestrator/scanner.h"
#include "fedxgb_testing/synthetic.h"

namespace fedxgb::fed {
namespace {

const phe::KeyPair& Key512() {
  static const phe::KeyPair kp = [] {
    phe::KeyGenOptions o;
    o.key_bits = 512;
    o.seed = 6;
    return phe::GenerateKeyPair(o);
  }();
  return kp;
}

gbt::GbtParams SmallParams() {
  gbt::GbtParams p;
  p.n_estimators = 3;
  p.max_depth = 3;
  p.max_bin = 8;
  p.reg_lambda = 1.0;
  return p;
}

struct Fixture {
  data::PartyDataset joined;
  std::vector<data::PartyDataset> parts;
  VflRoster roster;
};

Fixture Make(uint64_t seed, size_t rows) {
  Fixture f;
  f.joined = testing::RandomDataset(seed, rows, 8, "joined");
  data::VerticalSplit split;
  split.party_ids = {"active", "passive"};
  split.symbols = {{"G1", "G3", "G6", "G7"}, {"G2", "G4", "G5", "G8"}};
  f.parts = data::VerticalPartition(f.joined, split);
  f.roster = DefaultVflRoster(f.parts);
  return f;
}

VflResult Train(const Fixture& f, gbt::BinningScope scope, orchestrator::MessageBus& bus,
                bool record = false) {
  VflOptions o;
  o.key = Key512();
  o.train.seed = 3;
  o.train.binning = scope;
  o.record_secrets = record;
  return VflTrain(bus, f.roster, f.parts[0], std::span(f.parts).subspan(1), SmallParams(), o);
}

// Resolved model with the bookkeeping fields of a centralized model.
gbt::BoostedEnsemble Comparable(const VflModel& m) {
  gbt::BoostedEnsemble e = ResolveThresholds(m);
  for (const auto& table : m.passive_tables) {
    for (const auto& r : table) e.trees.at(r.tree).nodes.at(r.node).feature_id = r.feature_id;
  }
  for (auto& t : e.trees) {
    for (auto& n : t.nodes) {
      n.owner_party = 0;
      n.record_id = -1;
    }
  }
  return e;
}

TEST(Vfl, MatchesCentralizedOnJoinedData) {
  const Fixture f = Make(31, 80);
  for (gbt::BinningScope scope : {gbt::BinningScope::kPerNode, gbt::BinningScope::kGlobal}) {
    orchestrator::MessageBus bus;
    const VflResult r = Train(f, scope, bus);
    gbt::TrainOptions to;
    to.seed = 3;
    to.binning = scope;
    const gbt::BoostedEnsemble central = gbt::TrainCentralized(f.joined, SmallParams(), to);
    EXPECT_EQ(gbt::ModelHash(Comparable(r.model)), gbt::ModelHash(central))
        << gbt::ToString(scope);
    EXPECT_FALSE(r.model.passive_tables.at(0).empty());
  }
}

TEST(Vfl, PassiveNodesHideThresholds) {
  const Fixture f = Make(32, 60);
  orchestrator::MessageBus bus;
  const VflResult r = Train(f, gbt::BinningScope::kPerNode, bus);
  int passive_nodes = 0;
  for (const auto& t : r.model.skeleton.trees) {
    for (const auto& n : t.nodes) {
      if (n.is_leaf || n.owner_party == 0) continue;
      ++passive_nodes;
      EXPECT_TRUE(std::isnan(n.threshold));
      EXPECT_GE(n.record_id, 0);
    }
  }
  EXPECT_EQ(static_cast<size_t>(passive_nodes), r.model.passive_tables[0].size());
  const VflModel back = VflModelFromJson(ToJson(r.model));
  EXPECT_EQ(gbt::ModelHash(ResolveThresholds(back)), gbt::ModelHash(ResolveThresholds(r.model)));
}

TEST(Vfl, FederatedPredictEqualsResolvedModel) {
  const Fixture f = Make(33, 70);
  orchestrator::MessageBus bus;
  const VflResult r = Train(f, gbt::BinningScope::kPerNode, bus);
  const Fixture test = Make(34, 25);
  orchestrator::MessageBus infer;
  const std::vector<double> fed =
      VflPredict(infer, f.roster, r.model, test.parts[0], std::span(test.parts).subspan(1));
  const std::vector<double> local =
      gbt::PredictProbabilities(ResolveThresholds(r.model), test.joined);
  EXPECT_EQ(fed, local);
}

TEST(Vfl, TranscriptIsClean) {
  const Fixture f = Make(35, 60);
  orchestrator::MessageBus bus;
  const VflResult r = Train(f, gbt::BinningScope::kPerNode, bus, true);
  VflPredict(bus, f.roster, r.model, f.parts[0], std::span(f.parts).subspan(1));
  ASSERT_FALSE(r.secrets.empty());
  const auto report =
      orchestrator::ScanTranscript(bus.transcript(), orchestrator::VerticalPolicy({"passive"}),
                                   r.secrets);
  EXPECT_TRUE(report.clean()) << report.Verdict() << " first: "
                              << (report.findings.empty() ? "" : report.findings[0].what);
}

TEST(Vfl, MisalignedPartiesRejected) {
  Fixture f = Make(36, 40);
  std::swap(f.parts[1].sample_ids[0], f.parts[1].sample_ids[1]);
  orchestrator::MessageBus bus;
  EXPECT_THROW(Train(f, gbt::BinningScope::kPerNode, bus), DataError);
}

TEST(Vfl, DroppedReplyAborts) {
  const Fixture f = Make(37, 40);
  orchestrator::MessageBus bus;
  bus.SetDropFilter([](const orchestrator::Envelope& e) {
    return e.type == orchestrator::msg::kEncHistogramSubmit;
  });
  EXPECT_THROW(Train(f, gbt::BinningScope::kPerNode, bus), ProtocolError);
}

}  // namespace
}  // namespace fedxgb::fed
