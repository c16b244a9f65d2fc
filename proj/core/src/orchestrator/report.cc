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

#include "fedxgb/orchestrator/report.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fedxgb/common/errors.h"

namespace fedxgb::orchestrator {
namespace {

using nlohmann::json;

std::string Pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v * 100.0);
  return buf;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

json TrafficJson(const std::map<std::string, PartyTraffic>& t) {
  json out = json::object();
  for (const auto& [party, v] : t) {
    out[party] = {{"bytes_sent", v.bytes_sent},
                  {"messages_sent", v.messages_sent},
                  {"bytes_received", v.bytes_received},
                  {"messages_received", v.messages_received}};
  }
  return out;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace

json ToJson(const ExperimentReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json folds = json::array();
    for (const auto& f : row.folds) folds.push_back(eval::ToJson(f));
    json j = {{"regime", ToString(row.regime)},
              {"tuning", row.tuning},
              {"party", row.party},
              {"privacy", row.safe ? "safe" : "not_safe"}};
    if (row.error.empty()) {
      j["mean"] = eval::ToJson(row.mean);
      j["folds"] = folds;
    } else {
      j["error"] = row.error;
    }
    rows.push_back(j);
  }
  json costs = json::array();
  for (const auto& c : r.costs) {
    json j = eval::ToJson(c.cost);
    j["tuning"] = c.tuning;
    j["party"] = c.party;
    costs.push_back(j);
  }
  json tuned = json::array();
  for (const auto& t : r.tuned) {
    tuned.push_back({{"regime", ToString(t.regime)},
                     {"tuning", t.tuning},
                     {"party", t.party},
                     {"fold", t.fold},
                     {"params", hpo::ToJson(t.params)}});
  }
  json scans = json::array();
  for (const auto& s : r.scans) {
    scans.push_back({{"stage", s.stage},
                     {"fold", s.fold},
                     {"messages", s.messages},
                     {"findings", s.findings},
                     {"verdict", s.verdict}});
  }
  return {{"config", ToJson(r.config)},
          {"parties", r.parties},
          {"fold_plan_hash", r.fold_plan_hash},
          {"rows", rows},
          {"privacy_costs", costs},
          {"tuned", tuned},
          {"model_hashes", r.model_hashes},
          {"training_traffic", TrafficJson(r.training_traffic)},
          {"tuning_traffic", TrafficJson(r.tuning_traffic)},
          {"scans", scans}};
}

std::string SummaryTable(const ExperimentReport& r) {
  std::ostringstream out;
  out << "Item\tParty\tTuning\tPrivacy\tAUC\tACC\tF1-Score\n";
  for (const auto& row : r.rows) {
    out << ToString(row.regime) << '\t' << row.party << '\t' << row.tuning << '\t'
        << (row.safe ? "Safe" : "Not safe");
    if (row.error.empty()) {
      out << '\t' << Pct(row.mean.auc) << '\t' << Pct(row.mean.accuracy) << '\t'
          << Pct(row.mean.f1) << '\n';
    } else {
      out << "\tfailed\tfailed\tfailed\n";
    }
  }
  return out.str();
}

std::string FoldsTable(const ExperimentReport& r) {
  std::ostringstream out;
  out << "item\tparty\ttuning\tfold\tauc\taccuracy\tprecision\trecall\tf1\tfpr_standard\t"
         "fpr_alt\n";
  for (const auto& row : r.rows) {
    for (const auto& f : row.folds) {
      out << ToString(row.regime) << '\t' << row.party << '\t' << row.tuning << '\t' << f.fold
          << '\t' << Pct(f.auc) << '\t' << Pct(f.accuracy) << '\t' << Pct(f.precision) << '\t'
          << Pct(f.recall) << '\t' << Pct(f.f1) << '\t' << Pct(f.fpr_standard) << '\t'
          << Pct(f.fpr_alt) << '\n';
    }
  }
  return out.str();
}

std::string CostsTable(const ExperimentReport& r) {
  std::ostringstream out;
  out << "kind\ttuning\tbaseline_party\tmetric\topen_share\tother\tcost\n";
  for (const auto& c : r.costs) {
    out << eval::ToString(c.cost.kind) << '\t' << c.tuning << '\t' << c.party << '\t'
        << c.cost.metric << '\t' << Pct(c.cost.a_open_share) << '\t' << Pct(c.cost.a_other)
        << '\t' << Pct(c.cost.cost) << '\n';
  }
  return out.str();
}

std::string TunedTable(const ExperimentReport& r) {
  std::ostringstream out;
  out << "item\ttuning\tparty\tfold\tparameter\traw\tvalue\n";
  for (const auto& t : r.tuned) {
    for (size_t i = 0; i < t.params.names.size(); ++i) {
      out << ToString(t.regime) << '\t' << t.tuning << '\t' << t.party << '\t' << t.fold << '\t'
          << t.params.names[i] << '\t' << Num(t.params.raw[i]) << '\t'
          << Num(t.params.values[i]) << '\n';
    }
  }
  return out.str();
}

std::string TimingTable(const ExperimentReport& r) {
  std::ostringstream out;
  out << "# End-to-end wall-clock seconds summed over folds: tuning plus training plus\n"
         "# prediction for each model variant. Hardware dependent.\n";
  out << "what\tseconds\n";
  for (const auto& t : r.timing) out << t.what << '\t' << Num(t.seconds) << '\n';
  return out.str();
}

void WriteReport(const ExperimentReport& r, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir + ": " + ec.message());
  const fs::path base(dir);
  WriteFile(base / "report.json", ToJson(r).dump(2) + "\n");
  WriteFile(base / "summary.tsv", SummaryTable(r));
  WriteFile(base / "folds.tsv", FoldsTable(r));
  WriteFile(base / "privacy_cost.tsv", CostsTable(r));
  WriteFile(base / "tuned.tsv", TunedTable(r));
  std::ostringstream traffic;
  traffic << "stage\tparty\tbytes_sent\tmessages_sent\tbytes_received\tmessages_received\n";
  for (const auto& [stage, map] :
       {std::pair{"training", &r.training_traffic}, std::pair{"tuning", &r.tuning_traffic}}) {
    for (const auto& [party, t] : *map) {
      traffic << stage << '\t' << party << '\t' << t.bytes_sent << '\t' << t.messages_sent << '\t'
              << t.bytes_received << '\t' << t.messages_received << '\n';
    }
  }
  WriteFile(base / "traffic.tsv", traffic.str());
  WriteFile(base / "timing.tsv", TimingTable(r));
  for (size_t f = 0; f < r.transcripts.size(); ++f) {
    r.transcripts[f].Save((base / ("transcript_fold" + std::to_string(f) + ".log")).string());
  }
}

}  // namespace fedxgb::orchestrator
