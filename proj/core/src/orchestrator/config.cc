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

#include "fedxgb/orchestrator/config.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "fedxgb/common/errors.h"

namespace fedxgb::orchestrator {

using nlohmann::json;

std::string ToString(Scenario s) {
  return s == Scenario::kHflCaseOne ? "hfl_case_one" : "vfl_case_two";
}

std::string ToString(Regime r) {
  switch (r) {
    case Regime::kSeparate:
      return "separate";
    case Regime::kFederated:
      return "federated";
    case Regime::kCentralized:
      return "centralized";
  }
  return "?";
}

std::string ToString(Tuning t) {
  switch (t) {
    case Tuning::kNone:
      return "none";
    case Tuning::kDirectBo:
      return "direct_bo";
    case Tuning::kAggregatedBo:
      return "aggregated_bo";
  }
  return "?";
}

Scenario ScenarioFromString(const std::string& s) {
  if (s == "hfl_case_one") return Scenario::kHflCaseOne;
  if (s == "vfl_case_two") return Scenario::kVflCaseTwo;
  throw ConfigError("unknown scenario '" + s + "'");
}

Regime RegimeFromString(const std::string& s) {
  if (s == "separate") return Regime::kSeparate;
  if (s == "federated") return Regime::kFederated;
  if (s == "centralized") return Regime::kCentralized;
  throw ConfigError("unknown regime '" + s + "'");
}

Tuning TuningFromString(const std::string& s) {
  if (s == "none") return Tuning::kNone;
  if (s == "direct_bo") return Tuning::kDirectBo;
  if (s == "aggregated_bo") return Tuning::kAggregatedBo;
  throw ConfigError("unknown tuning mode '" + s + "'");
}

bool ExperimentConfig::Has(Regime r) const {
  return std::find(regimes.begin(), regimes.end(), r) != regimes.end();
}

bool ExperimentConfig::Has(Tuning t) const {
  return std::find(tuning.begin(), tuning.end(), t) != tuning.end();
}

void ExperimentConfig::Validate() const {
  if (regimes.empty()) throw ConfigError("at least one regime is required");
  if (tuning.empty()) throw ConfigError("at least one tuning mode is required");
  if (std::set<Regime>(regimes.begin(), regimes.end()).size() != regimes.size()) {
    throw ConfigError("duplicate regime");
  }
  if (std::set<Tuning>(tuning.begin(), tuning.end()).size() != tuning.size()) {
    throw ConfigError("duplicate tuning mode");
  }
  if (k < 2) throw ConfigError("k must be at least 2");
  if (key_bits < 130) throw ConfigError("key_bits must be at least 130");
  if (!(valid_fraction > 0.0 && valid_fraction < 1.0)) {
    throw ConfigError("valid_fraction must lie in (0, 1)");
  }
  if (bo.budget < bo.initial_points || bo.initial_points < 1) {
    throw ConfigError("bo budget must be at least initial_points >= 1");
  }
  params.Validate();
  if (scenario == Scenario::kVflCaseTwo) {
    if (vertical.party_ids.size() < 2 || vertical.symbols.size() != vertical.party_ids.size()) {
      throw ConfigError("vertical split needs one symbol list per party, at least two parties");
    }
    if (vertical.label_party != 0) {
      throw ConfigError("the label party must be listed first in the vertical split");
    }
    if (data.csv_paths.size() > 1) {
      throw ConfigError("vfl_case_two reads one joined CSV file");
    }
  } else if (data.csv_paths.size() == 1) {
    throw ConfigError("hfl_case_one needs one CSV file per district");
  }
  if (data.csv_paths.empty()) data.synth.Validate();
}

json ToJson(const ExperimentConfig& c) {
  json regimes = json::array(), tuning = json::array();
  for (Regime r : c.regimes) regimes.push_back(ToString(r));
  for (Tuning t : c.tuning) tuning.push_back(ToString(t));
  json data;
  if (c.data.csv_paths.empty()) {
    data["synth"] = data::ToJson(c.data.synth);
  } else {
    data["csv"] = c.data.csv_paths;
  }
  return {{"scenario", ToString(c.scenario)},
          {"regimes", regimes},
          {"tuning", tuning},
          {"params", c.params},
          {"data", data},
          {"k", c.k},
          {"seed", c.seed},
          {"secagg", fed::ToString(c.secagg)},
          {"key_bits", c.key_bits},
          {"bo",
           {{"budget", c.bo.budget},
            {"initial_points", c.bo.initial_points},
            {"candidates", c.bo.candidates},
            {"xi", c.bo.xi}}},
          {"valid_fraction", c.valid_fraction},
          {"vfl_binning", gbt::ToString(c.vfl_binning)},
          {"vertical",
           {{"party_ids", c.vertical.party_ids},
            {"symbols", c.vertical.symbols},
            {"label_party", c.vertical.label_party}}}};
}

ExperimentConfig ExperimentConfigFromJson(const json& j) {
  static const std::set<std::string> kKeys = {
      "scenario", "regimes",  "tuning", "params",         "data",        "k",
      "seed",     "secagg",   "key_bits", "bo",           "valid_fraction",
      "vfl_binning", "vertical"};
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  ExperimentConfig c;
  try {
    if (j.contains("scenario")) c.scenario = ScenarioFromString(j.at("scenario"));
    if (j.contains("regimes")) {
      c.regimes.clear();
      for (const auto& r : j.at("regimes")) c.regimes.push_back(RegimeFromString(r));
    }
    if (j.contains("tuning")) {
      c.tuning.clear();
      const json& t = j.at("tuning");
      if (t.is_string()) {
        c.tuning.push_back(TuningFromString(t));
      } else {
        for (const auto& v : t) c.tuning.push_back(TuningFromString(v));
      }
    }
    if (j.contains("params")) {
      json merged = c.params;
      merged.update(j.at("params"));
      c.params = merged.get<gbt::GbtParams>();
    }
    if (j.contains("data")) {
      const json& d = j.at("data");
      if (d.contains("csv")) c.data.csv_paths = d.at("csv").get<std::vector<std::string>>();
      if (d.contains("synth")) c.data.synth = data::SynthConfigFromJson(d.at("synth"));
    }
    if (j.contains("k")) c.k = j.at("k").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
    if (j.contains("secagg")) c.secagg = fed::SecAggModeFromString(j.at("secagg"));
    if (j.contains("key_bits")) c.key_bits = j.at("key_bits").get<int>();
    if (j.contains("bo")) {
      const json& b = j.at("bo");
      c.bo.budget = b.value("budget", c.bo.budget);
      c.bo.initial_points = b.value("initial_points", c.bo.initial_points);
      c.bo.candidates = b.value("candidates", c.bo.candidates);
      c.bo.xi = b.value("xi", c.bo.xi);
    }
    if (j.contains("valid_fraction")) c.valid_fraction = j.at("valid_fraction").get<double>();
    if (j.contains("vfl_binning")) {
      c.vfl_binning = gbt::BinningScopeFromString(j.at("vfl_binning"));
    }
    if (j.contains("vertical")) {
      const json& v = j.at("vertical");
      c.vertical.party_ids = v.at("party_ids").get<std::vector<std::string>>();
      c.vertical.symbols = v.at("symbols").get<std::vector<std::vector<std::string>>>();
      c.vertical.label_party = v.value("label_party", 0);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed experiment config: ") + e.what());
  }
  c.Validate();
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return ExperimentConfigFromJson(j);
}

}  // namespace fedxgb::orchestrator
