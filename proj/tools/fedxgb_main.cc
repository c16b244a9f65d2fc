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

// fedxgb command-line tool.
//
//   fedxgb keygen   --key-bits 1024 --seed 1 --out keys/
//   fedxgb synth    --seed 7 --out data/
//   fedxgb train    --config exp.json --regime federated --out model/
//   fedxgb tune     --config exp.json --mode federated_aggregated --out tuned/
//   fedxgb evaluate --model model/model.json --data data/A.csv
//   fedxgb compare  --config exp.json --seed 1 --out report/
//   fedxgb inspect-transcript report/transcript_fold0.log
//
// Exit status: 0 success, 1 usage error, 2 runtime error or detected leak.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/rng.h"
#include "fedxgb/data/csv.h"
#include "fedxgb/data/partition.h"
#include "fedxgb/data/synth.h"
#include "fedxgb/eval/metrics.h"
#include "fedxgb/fed/hfl.h"
#include "fedxgb/fed/vfl.h"
#include "fedxgb/gbt/trainer.h"
#include "fedxgb/hpo/tuning.h"
#include "fedxgb/orchestrator/config.h"
#include "fedxgb/orchestrator/envelope.h"
#include "fedxgb/orchestrator/experiment.h"
#include "fedxgb/orchestrator/report.h"
#include "fedxgb/orchestrator/scanner.h"
#include "fedxgb/phe/paillier.h"
#include "fedxgb/phe/serialization.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace fedxgb {
namespace {

struct Common {
  std::string config;
  std::optional<uint64_t> seed;
  std::string out = ".";
  std::optional<int> key_bits;
  std::string secagg;
};

void AddCommon(CLI::App* app, Common& c, bool with_config) {
  if (with_config) app->add_option("--config", c.config, "experiment config (JSON)");
  app->add_option("--seed", c.seed, "master seed");
  app->add_option("--out", c.out, "output directory");
  app->add_option("--key-bits", c.key_bits, "Paillier modulus bits");
  app->add_option("--secagg", c.secagg, "secure aggregation mode")
      ->check(CLI::IsMember({"paillier", "mask"}));
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path OutDir(const Common& c) {
  fs::create_directories(c.out);
  return fs::path(c.out);
}

// Config from file (or defaults) with command-line overrides applied. A
// seed override also reseeds the synthetic generator.
orchestrator::ExperimentConfig ResolveConfig(const Common& c) {
  orchestrator::ExperimentConfig cfg;
  if (!c.config.empty()) cfg = orchestrator::LoadExperimentConfig(c.config);
  if (c.seed) {
    cfg.seed = *c.seed;
    cfg.data.synth.seed = *c.seed;
  }
  if (c.key_bits) cfg.key_bits = *c.key_bits;
  if (!c.secagg.empty()) cfg.secagg = fed::SecAggModeFromString(c.secagg);
  cfg.Validate();
  return cfg;
}

gbt::GbtParams ParamsFor(const orchestrator::ExperimentConfig& cfg, const std::string& tuned) {
  if (tuned.empty()) return cfg.params;
  hpo::TunedParams t = hpo::TunedParamsFromJson(json::parse(ReadText(tuned)));
  return hpo::SearchSpace::BoosterDefault().Apply(cfg.params, t.values);
}

json ModelDocument(const gbt::BoostedEnsemble& m) {
  return {{"kind", "ensemble"}, {"model", gbt::ToJson(m)}};
}

int Keygen(const Common& c) {
  phe::KeyGenOptions ko;
  ko.key_bits = c.key_bits.value_or(1024);
  if (c.seed) ko.seed = *c.seed;
  phe::KeyPair kp = phe::GenerateKeyPair(ko);
  const fs::path dir = OutDir(c);
  WriteText(dir / "paillier.pub", phe::SerializePublicKey(kp.public_key));
  WriteText(dir / "paillier.key", phe::SerializePrivateKey(kp.private_key));
  std::cout << "wrote " << (dir / "paillier.pub").string() << " and "
            << (dir / "paillier.key").string() << " (" << kp.public_key.bits() << "-bit n)\n";
  return 0;
}

int Synth(const Common& c, const std::string& synth_config) {
  data::SynthConfig sc = data::DefaultSynthConfig();
  if (!synth_config.empty()) sc = data::SynthConfigFromJson(json::parse(ReadText(synth_config)));
  if (c.seed) sc.seed = *c.seed;
  const fs::path dir = OutDir(c);
  for (const auto& d : data::GenerateDistricts(sc)) {
    const fs::path path = dir / (d.party_id + ".csv");
    data::SaveCsv(path.string(), d);
    std::cout << "wrote " << path.string() << " (" << d.num_samples() << " wells)\n";
  }
  WriteText(dir / "synth_config.json", data::ToJson(sc).dump(2) + "\n");
  return 0;
}

int Train(const Common& c, const std::string& regime_name, const std::string& tuned) {
  const auto cfg = ResolveConfig(c);
  const auto regime = orchestrator::RegimeFromString(regime_name);
  const gbt::GbtParams params = ParamsFor(cfg, tuned);
  const bool hfl = cfg.scenario == orchestrator::Scenario::kHflCaseOne;
  auto parties = orchestrator::LoadParties(cfg);
  gbt::TrainOptions opts;
  opts.seed = cfg.seed;
  opts.binning = hfl ? gbt::BinningScope::kGlobal : cfg.vfl_binning;
  const fs::path dir = OutDir(c);

  auto pooled = [&] {
    return hfl ? data::HorizontalUnion(parties, "pooled") : data::VerticalRejoin(parties, "pooled");
  };
  if (regime == orchestrator::Regime::kCentralized) {
    gbt::BoostedEnsemble m = gbt::TrainCentralized(pooled(), params, opts);
    WriteText(dir / "model.json", ModelDocument(m).dump(2) + "\n");
    std::cout << "centralized model " << gbt::ModelHash(m) << "\n";
    return 0;
  }
  if (regime == orchestrator::Regime::kSeparate) {
    const data::PartyDataset joined = pooled();
    for (auto p : parties) {
      if (!p.has_labels()) p.labels = joined.labels;
      gbt::BoostedEnsemble m = gbt::TrainCentralized(p, params, opts);
      WriteText(dir / ("model_" + p.party_id + ".json"), ModelDocument(m).dump(2) + "\n");
      std::cout << p.party_id << " model " << gbt::ModelHash(m) << "\n";
    }
    return 0;
  }
  orchestrator::MessageBus bus;
  if (hfl) {
    fed::HflRoster roster = fed::MakeHflRoster(parties, DeriveSeed(cfg.seed, {0x6d61736b}));
    fed::HflOptions ho;
    ho.mode = cfg.secagg;
    ho.key_bits = cfg.key_bits;
    ho.train = opts;
    fed::HflResult res = fed::HflTrain(bus, roster, parties, params, ho);
    WriteText(dir / "model.json", ModelDocument(res.model).dump(2) + "\n");
    std::cout << "federated model " << gbt::ModelHash(res.model) << "\n";
  } else {
    fed::VflRoster roster = fed::DefaultVflRoster(parties);
    fed::VflOptions vo;
    vo.key_bits = cfg.key_bits;
    vo.train = opts;
    std::span<const data::PartyDataset> all(parties);
    fed::VflResult res = fed::VflTrain(bus, roster, all[0], all.subspan(1), params, vo);
    WriteText(dir / "model.json",
              json({{"kind", "vfl"}, {"model", fed::ToJson(res.model)}}).dump(2) + "\n");
    std::cout << "federated model " << gbt::ModelHash(fed::ResolveThresholds(res.model)) << "\n";
  }
  bus.transcript().Save((dir / "transcript.log").string());
  std::cout << bus.transcript().envelopes.size() << " messages, "
            << bus.transcript().TotalBytes() << " bytes\n";
  return 0;
}

int Tune(const Common& c, const std::string& mode_name) {
  const auto cfg = ResolveConfig(c);
  const auto mode = hpo::TuneModeFromString(mode_name);
  const bool hfl = cfg.scenario == orchestrator::Scenario::kHflCaseOne;
  auto parties = orchestrator::LoadParties(cfg);
  const data::PartyDataset joined =
      hfl ? data::HorizontalUnion(parties, "pooled") : data::VerticalRejoin(parties, "pooled");
  for (auto& p : parties) {
    if (!p.has_labels()) p.labels = joined.labels;
  }
  hpo::TuneSettings settings;
  settings.base = cfg.params;
  settings.train.seed = cfg.seed;
  settings.train.binning = hfl ? gbt::BinningScope::kGlobal : cfg.vfl_binning;
  settings.bo = cfg.bo;
  settings.bo.seed = DeriveSeed(cfg.seed, {0x626f});
  settings.valid_fraction = cfg.valid_fraction;
  const fs::path dir = OutDir(c);
  auto emit = [&](const std::string& name, const hpo::TunedParams& t) {
    WriteText(dir / name, hpo::ToJson(t).dump(2) + "\n");
    std::cout << name << ":";
    for (size_t i = 0; i < t.names.size(); ++i) std::cout << " " << t.names[i] << "=" << t.values[i];
    std::cout << "\n";
  };
  switch (mode) {
    case hpo::TuneMode::kNone: {
      hpo::TunedParams t;
      for (const auto& d : settings.space.dims()) t.names.push_back(d.name);
      t.raw = settings.space.FromParams(cfg.params);
      t.values = t.raw;
      t.objective = std::numeric_limits<double>::quiet_NaN();
      emit("tuned.json", t);
      return 0;
    }
    case hpo::TuneMode::kSeparate:
      for (const auto& p : parties) emit("tuned_" + p.party_id + ".json", hpo::TuneDirect(p, settings));
      return 0;
    case hpo::TuneMode::kCentralized:
      emit("tuned.json", hpo::TuneDirect(joined, settings));
      return 0;
    case hpo::TuneMode::kFederatedAggregated:
      emit("tuned.json", hpo::TuneFederatedAggregated(parties, settings));
      return 0;
  }
  return 0;
}

int Evaluate(const Common& c, const std::string& model_path,
             const std::vector<std::string>& data_paths) {
  json doc = json::parse(ReadText(model_path));
  gbt::BoostedEnsemble model;
  const std::string kind = doc.value("kind", "ensemble");
  if (kind == "vfl") {
    model = fed::ResolveThresholds(fed::VflModelFromJson(doc.at("model")));
  } else {
    model = gbt::EnsembleFromJson(doc.contains("model") ? doc.at("model") : doc);
  }
  if (data_paths.empty()) throw ConfigError("evaluate needs at least one --data file");
  std::vector<data::PartyDataset> sets;
  for (const auto& p : data_paths) {
    sets.push_back(data::LoadCsv(p, data::WellFeatureSchema(), fs::path(p).stem().string()));
  }
  const data::PartyDataset all = sets.size() == 1 ? sets[0] : data::HorizontalUnion(sets, "eval");
  if (!all.has_labels()) throw DataError("evaluation data has no label column");
  if (static_cast<int>(all.num_features()) < model.num_features) {
    throw DataError("evaluation data has fewer features than the model");
  }
  const auto probs = gbt::PredictProbabilities(model, all);
  const eval::MetricReport r = eval::Evaluate(*all.labels, probs, -1, "evaluate");
  const std::string text = eval::ToJson(r).dump(2) + "\n";
  if (c.out != ".") WriteText(OutDir(c) / "metrics.json", text);
  std::cout << text;
  return 0;
}

int Compare(const Common& c) {
  const auto cfg = ResolveConfig(c);
  const auto report = orchestrator::RunExperiment(cfg);
  orchestrator::WriteReport(report, c.out);
  std::cout << orchestrator::SummaryTable(report);
  for (const auto& row : report.rows) {
    if (!row.error.empty()) std::cerr << "failed: " << row.Label() << ": " << row.error << "\n";
  }
  std::cout << "report written to " << c.out << "\n";
  return 0;
}

int Inspect(const std::string& path, const std::vector<std::string>& data_paths) {
  namespace msg = orchestrator::msg;
  const orchestrator::Transcript t = orchestrator::Transcript::Load(path);
  std::set<std::string> clients, passives;
  for (const auto& e : t.envelopes) {
    if (e.type == msg::kHistogramSubmit || e.type == msg::kPartitionReport) clients.insert(e.sender);
    if (e.type == msg::kEncHistogramSubmit || e.type == msg::kPartitionReply) {
      passives.insert(e.sender);
    }
  }
  orchestrator::ScanPolicy policy;
  if (!clients.empty()) {
    policy = orchestrator::HorizontalPolicy({clients.begin(), clients.end()});
  } else if (!passives.empty()) {
    policy = orchestrator::VerticalPolicy({passives.begin(), passives.end()});
  }
  std::vector<orchestrator::PartySecrets> secrets;
  for (const auto& p : data_paths) {
    const auto d = data::LoadCsv(p, data::WellFeatureSchema(), fs::path(p).stem().string());
    orchestrator::PartySecrets s;
    s.party = d.party_id;
    s.feature_values = d.x.values();
    if (d.has_labels()) s.label_vectors.push_back(*d.labels);
    secrets.push_back(std::move(s));
  }
  const auto report = orchestrator::ScanTranscript(t, policy, secrets);
  std::cout << report.Verdict() << "\n";
  for (const auto& f : report.findings) {
    std::cout << "  #" << f.position << " " << f.sender << " -> " << f.recipient << " " << f.type
              << ": " << f.what << "\n";
  }
  return report.clean() ? 0 : 2;
}

int Main(int argc, char** argv) {
  CLI::App app{"Federated gradient-boosted trees with Paillier encryption"};
  app.require_subcommand(1);
  Common c;

  auto* keygen = app.add_subcommand("keygen", "generate a Paillier keypair");
  AddCommon(keygen, c, false);

  std::string synth_config;
  auto* synth = app.add_subcommand("synth", "generate the two synthetic district datasets");
  AddCommon(synth, c, false);
  synth->add_option("--synth-config", synth_config, "generator config (JSON)");

  std::string regime = "federated", tuned;
  auto* train = app.add_subcommand("train", "train one regime on all rows");
  AddCommon(train, c, true);
  train->add_option("--regime", regime, "separate, federated or centralized")
      ->check(CLI::IsMember({"separate", "federated", "centralized"}));
  train->add_option("--params", tuned, "tuned parameters from `tune`");

  std::string mode = "federated_aggregated";
  auto* tune = app.add_subcommand("tune", "Bayesian hyperparameter optimization");
  AddCommon(tune, c, true);
  tune->add_option("--mode", mode, "none, separate, centralized or federated_aggregated")
      ->check(CLI::IsMember({"none", "separate", "centralized", "federated_aggregated"}));

  std::string model_path;
  std::vector<std::string> data_paths;
  auto* evaluate = app.add_subcommand("evaluate", "metrics of a saved model on labeled CSV data");
  AddCommon(evaluate, c, false);
  evaluate->add_option("--model", model_path, "model file")->required();
  evaluate->add_option("--data", data_paths, "labeled CSV file(s)")->required();

  auto* compare = app.add_subcommand("compare", "run the full comparison experiment");
  AddCommon(compare, c, true);

  std::string transcript;
  auto* inspect = app.add_subcommand("inspect-transcript", "scan a transcript for leaks");
  inspect->add_option("transcript", transcript, "transcript log")->required();
  inspect->add_option("--data", data_paths, "party CSV files whose values must not appear");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    if (*keygen) return Keygen(c);
    if (*synth) return Synth(c, synth_config);
    if (*train) return Train(c, regime, tuned);
    if (*tune) return Tune(c, mode);
    if (*evaluate) return Evaluate(c, model_path, data_paths);
    if (*compare) return Compare(c);
    if (*inspect) return Inspect(transcript, data_paths);
  } catch (const std::exception& e) {
    std::cerr << "fedxgb: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace
}  // namespace fedxgb

int main(int argc, char** argv) { return fedxgb::Main(argc, argv); }
