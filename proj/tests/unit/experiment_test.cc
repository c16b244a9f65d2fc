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

#include "fedxgb/orchestrator/config.h"
#include "fedxgb/orchestrator/experiment.h"
#include "fedxgb/orchestrator/report.h"

namespace fedxgb::orchestrator {
namespace {

ExperimentConfig SmallHfl() {
  ExperimentConfig c;
  c.scenario = Scenario::kHflCaseOne;
  c.params.n_estimators = 5;
  c.params.max_depth = 3;
  c.params.max_bin = 16;
  c.k = 3;
  c.seed = 4;
  c.secagg = fed::SecAggMode::kMaskOnly;
  return c;
}

const ReportRow* Find(const ExperimentReport& r, Regime regime, const std::string& party) {
  for (const auto& row : r.rows) {
    if (row.regime == regime && row.party == party && row.tuning == "original") return &row;
  }
  return nullptr;
}

TEST(Experiment, FederatedMatchesCentralized) {
  ExperimentConfig c = SmallHfl();
  c.regimes = {Regime::kFederated, Regime::kCentralized};
  const ExperimentReport r = RunExperiment(c);
  const ReportRow* fed = Find(r, Regime::kFederated, "all");
  const ReportRow* cen = Find(r, Regime::kCentralized, "all");
  ASSERT_NE(fed, nullptr);
  ASSERT_NE(cen, nullptr);
  EXPECT_TRUE(fed->error.empty()) << fed->error;
  EXPECT_LE(std::abs(fed->mean.auc - cen->mean.auc), 0.005);
  EXPECT_EQ(fed->folds.size(), 3u);
  EXPECT_FALSE(r.costs.empty());
  for (const auto& s : r.scans) EXPECT_EQ(s.findings, 0u) << s.verdict;
  // Averages are fold means.
  double sum = 0;
  for (const auto& f : fed->folds) sum += f.auc;
  EXPECT_NEAR(fed->mean.auc, sum / 3, 1e-12);
  EXPECT_EQ(r.model_hashes.at("federated/original"), r.model_hashes.at("centralized/original"));
}

TEST(Experiment, SeparateOnlyHasNoCosts) {
  ExperimentConfig c = SmallHfl();
  c.regimes = {Regime::kSeparate};
  const ExperimentReport r = RunExperiment(c);
  EXPECT_TRUE(r.costs.empty());
  EXPECT_NE(Find(r, Regime::kSeparate, r.parties.at(0)), nullptr);
  EXPECT_NE(Find(r, Regime::kSeparate, r.parties.at(1)), nullptr);
}

TEST(Experiment, DeterministicReports) {
  ExperimentConfig c = SmallHfl();
  c.params.n_estimators = 3;
  const std::string a = ToJson(RunExperiment(c)).dump();
  const std::string b = ToJson(RunExperiment(c)).dump();
  EXPECT_EQ(a, b);
  c.seed = 5;
  EXPECT_NE(ToJson(RunExperiment(c)).dump(), a);
}

TEST(Experiment, VerticalScenarioRuns) {
  ExperimentConfig c = SmallHfl();
  c.scenario = Scenario::kVflCaseTwo;
  c.key_bits = 512;
  c.params.n_estimators = 2;
  c.params.max_depth = 2;
  c.params.max_bin = 8;
  c.regimes = {Regime::kFederated, Regime::kCentralized};
  c.vfl_binning = gbt::BinningScope::kGlobal;
  const ExperimentReport r = RunExperiment(c);
  const ReportRow* fed = Find(r, Regime::kFederated, "all");
  const ReportRow* cen = Find(r, Regime::kCentralized, "all");
  ASSERT_NE(fed, nullptr);
  ASSERT_NE(cen, nullptr);
  EXPECT_TRUE(fed->error.empty()) << fed->error;
  EXPECT_EQ(fed->mean.auc, cen->mean.auc);
  for (const auto& s : r.scans) EXPECT_EQ(s.findings, 0u) << s.verdict;
  EXPECT_NE(SummaryTable(r).find("AUC"), std::string::npos);
}

}  // namespace
}  // namespace fedxgb::orchestrator
