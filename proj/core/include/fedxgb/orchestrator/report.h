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

#ifndef FEDXGB_ORCHESTRATOR_REPORT_H_
#define FEDXGB_ORCHESTRATOR_REPORT_H_

#include <string>

#include <nlohmann/json.hpp>

#include "fedxgb/orchestrator/experiment.h"

namespace fedxgb::orchestrator {

// Everything except wall-clock timing and transcripts, so equal runs give
// equal documents.
nlohmann::json ToJson(const ExperimentReport& report);

// Tab-separated tables. Metrics are percentages with two decimals.
std::string SummaryTable(const ExperimentReport& report);  // Privacy, AUC, ACC, F1-Score
std::string FoldsTable(const ExperimentReport& report);
std::string CostsTable(const ExperimentReport& report);
std::string TunedTable(const ExperimentReport& report);
std::string TimingTable(const ExperimentReport& report);

// Writes report.json, summary.tsv, folds.tsv, privacy_cost.tsv, tuned.tsv,
// traffic.tsv, timing.tsv and transcript_fold<k>.log into `dir` (created if
// needed). Throws Error on I/O failure.
void WriteReport(const ExperimentReport& report, const std::string& dir);

}  // namespace fedxgb::orchestrator

#endif  // FEDXGB_ORCHESTRATOR_REPORT_H_
