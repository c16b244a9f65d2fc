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

#ifndef FEDXGB_ORCHESTRATOR_EXPERIMENT_H_
#define FEDXGB_ORCHESTRATOR_EXPERIMENT_H_

#include <map>
#include <string>
#include <vector>

#include "fedxgb/data/dataset.h"
#include "fedxgb/eval/metrics.h"
#include "fedxgb/eval/privacy_cost.h"
#include "fedxgb/hpo/bayes_opt.h"
#include "fedxgb/orchestrator/bus.h"
#include "fedxgb/orchestrator/config.h"
#include "fedxgb/orchestrator/scanner.h"

namespace fedxgb::orchestrator {

// One line of the comparison table: a model variant evaluated on the test
// rows of one party ("all" for the pooled test folds).
struct ReportRow {
  Regime regime = Regime::kSeparate;
  std::string tuning;  // "original", "direct_bo" or "aggregated_bo"
  std::string party;   // trained by (separate) or evaluated on
  bool safe = true;
  std::vector<eval::MetricReport> folds;
  eval::MetricReport mean;
  std::string error;  // empty on success

  std::string Label() const;
};

struct CostRow {
  std::string tuning;
  std::string party;  // whose separate model is the baseline, or "all"
  eval::PrivacyCost cost;
};

struct TunedRecord {
  Regime regime = Regime::kSeparate;
  std::string tuning;
  std::string party;
  int fold = 0;
  hpo::TunedParams params;
};

struct ScanSummary {
  std::string stage;  // "training" or "tuning"
  int fold = 0;
  size_t messages = 0;
  size_t findings = 0;
  std::string verdict;
};

struct TimingRow {
  std::string what;  // e.g. "federated/original", "tuning/aggregated_bo"
  double seconds = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<std::string> parties;
  std::string fold_plan_hash;
  std::vector<ReportRow> rows;
  std::vector<CostRow> costs;
  std::vector<TunedRecord> tuned;
  // Model hash per "regime/tuning" key and fold.
  std::map<std::string, std::vector<std::string>> model_hashes;
  // Federated training and tuning traffic per party, summed over folds.
  std::map<std::string, PartyTraffic> training_traffic;
  std::map<std::string, PartyTraffic> tuning_traffic;
  std::vector<ScanSummary> scans;
  // Federated training transcript of each fold (not serialized).
  std::vector<Transcript> transcripts;
  // Wall-clock seconds; hardware dependent and kept out of report.json.
  std::vector<TimingRow> timing;
};

// Loads the parties named by the config: one labeled dataset per district
// (HFL) or one dataset per vertical party (VFL; only the label owner, listed
// first, keeps labels).
std::vector<data::PartyDataset> LoadParties(const ExperimentConfig& config);

// Runs every requested regime and tuning mode over one shared stratified
// fold plan. Failures are recorded in ReportRow::error.
ExperimentReport RunExperiment(const ExperimentConfig& config);

}  // namespace fedxgb::orchestrator

#endif  // FEDXGB_ORCHESTRATOR_EXPERIMENT_H_
