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

#ifndef FEDXGB_ORCHESTRATOR_CONFIG_H_
#define FEDXGB_ORCHESTRATOR_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fedxgb/data/partition.h"
#include "fedxgb/data/synth.h"
#include "fedxgb/fed/secagg.h"
#include "fedxgb/gbt/params.h"
#include "fedxgb/hpo/bayes_opt.h"

namespace fedxgb::orchestrator {

enum class Scenario { kHflCaseOne, kVflCaseTwo };
enum class Regime { kSeparate, kFederated, kCentralized };
enum class Tuning { kNone, kDirectBo, kAggregatedBo };

std::string ToString(Scenario s);
std::string ToString(Regime r);
std::string ToString(Tuning t);
Scenario ScenarioFromString(const std::string& s);
Regime RegimeFromString(const std::string& s);
Tuning TuningFromString(const std::string& s);

// Where the parties' rows come from. CSV paths name one file per district
// (HFL) or a single joined file (VFL, split by `vertical`). Without paths
// the synthetic generator runs with `synth`.
struct DataSource {
  std::vector<std::string> csv_paths;
  data::SynthConfig synth = data::DefaultSynthConfig();
};

// Experiment file schema (JSON):
//   scenario       "hfl_case_one" | "vfl_case_two"
//   regimes        subset of ["separate", "federated", "centralized"]
//   tuning         "none" | "direct_bo" | "aggregated_bo", or a list of them
//   params         booster hyperparameters (see GbtParams)
//   data           {"csv": [paths...]} or {"synth": {...}} (defaults if absent)
//   k, seed        folds and master seed
//   secagg         "paillier" | "mask" (HFL only)
//   key_bits       Paillier modulus size
//   bo             {"budget", "initial_points", "candidates", "xi"}
//   valid_fraction validation share of each training fold used by tuning
//   vfl_binning    "per_node" | "global"
//   vertical       {"party_ids": [...], "symbols": [[...], ...], "label_party": 0}
struct ExperimentConfig {
  Scenario scenario = Scenario::kHflCaseOne;
  std::vector<Regime> regimes = {Regime::kSeparate, Regime::kFederated,
                                 Regime::kCentralized};
  std::vector<Tuning> tuning = {Tuning::kNone};
  gbt::GbtParams params;
  DataSource data;
  int k = 5;
  uint64_t seed = 1;
  fed::SecAggMode secagg = fed::SecAggMode::kPaillierMask;
  int key_bits = 1024;
  hpo::BoOptions bo;
  double valid_fraction = 0.1;
  gbt::BinningScope vfl_binning = gbt::BinningScope::kPerNode;
  data::VerticalSplit vertical = data::DefaultVerticalSplit();

  bool Has(Regime r) const;
  bool Has(Tuning t) const;

  // Throws ConfigError.
  void Validate() const;
};

nlohmann::json ToJson(const ExperimentConfig& c);
ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j);
ExperimentConfig LoadExperimentConfig(const std::string& path);

}  // namespace fedxgb::orchestrator

#endif  // FEDXGB_ORCHESTRATOR_CONFIG_H_
