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

#include "fedxgb/orchestrator/experiment.h"

#include <chrono>
#include <filesystem>
#include <functional>
#include <numeric>
#include <set>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/rng.h"
#include "fedxgb/data/csv.h"
#include "fedxgb/data/folds.h"
#include "fedxgb/data/partition.h"
#include "fedxgb/data/synth.h"
#include "fedxgb/fed/hfl.h"
#include "fedxgb/fed/vfl.h"
#include "fedxgb/gbt/trainer.h"
#include "fedxgb/hpo/aggregate.h"
#include "fedxgb/hpo/tuning.h"
#include "fedxgb/orchestrator/envelope.h"

namespace fedxgb::orchestrator {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr const char* kOriginal = "original";
constexpr const char* kDirect = "direct_bo";
constexpr const char* kAggregated = "aggregated_bo";

std::string Key(Regime r, const std::string& tuning, const std::string& party = "") {
  std::string k = ToString(r) + "/" + tuning;
  if (!party.empty()) k += "/" + party;
  return k;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void AddTraffic(std::map<std::string, PartyTraffic>& into, const MessageBus& bus) {
  for (const auto& [party, t] : bus.traffic()) {
    PartyTraffic& acc = into[party];
    acc.bytes_sent += t.bytes_sent;
    acc.messages_sent += t.messages_sent;
    acc.bytes_received += t.bytes_received;
    acc.messages_received += t.messages_received;
  }
}

std::vector<size_t> Concat(const data::Fold& f) {
  std::vector<size_t> rows = f.train;
  rows.insert(rows.end(), f.valid.begin(), f.valid.end());
  std::sort(rows.begin(), rows.end());
  return rows;
}

// Shared state of one experiment run.
class Runner {
 public:
  explicit Runner(const ExperimentConfig& config) : cfg_(config) {
    report_.config = config;
    hfl_ = config.scenario == Scenario::kHflCaseOne;
    parties_ = LoadParties(config);
    for (const auto& p : parties_) report_.parties.push_back(p.party_id);
    if (hfl_) {
      pooled_ = data::HorizontalUnion(parties_, "pooled");
      for (size_t p = 0; p < parties_.size(); ++p) {
        party_of_row_.insert(party_of_row_.end(), parties_[p].num_samples(),
                             static_cast<int>(p));
      }
      labeled_ = parties_;
    } else {
      pooled_ = data::VerticalRejoin(parties_, "pooled");
      party_of_row_.assign(pooled_.num_samples(), -1);
      labeled_ = parties_;
      for (auto& p : labeled_) p.labels = pooled_.labels;
    }
    labels_ = *pooled_.labels;
    std::vector<int> strata(labels_.size());
    for (size_t r = 0; r < labels_.size(); ++r) {
      strata[r] = hfl_ ? party_of_row_[r] * 2 + labels_[r] : labels_[r];
    }
    plan_ = data::MakeFoldPlan(labels_, strata, cfg_.k, 0.0, cfg_.seed);
    report_.fold_plan_hash = plan_.Hash();

    if (cfg_.Has(Tuning::kNone)) {
      sep_tunings_.push_back(kOriginal);
      fed_tunings_.push_back(kOriginal);
      cen_tunings_.push_back(kOriginal);
    }
    if (cfg_.Has(Tuning::kDirectBo) || cfg_.Has(Tuning::kAggregatedBo)) {
      sep_tunings_.push_back(kDirect);
    }
    if (cfg_.Has(Tuning::kAggregatedBo)) {
      fed_tunings_.push_back(kAggregated);
      cen_tunings_.push_back(kAggregated);
    }
    if (cfg_.Has(Tuning::kDirectBo)) cen_tunings_.push_back(kDirect);
    if (!cfg_.Has(Regime::kSeparate)) sep_tunings_.clear();
    if (!cfg_.Has(Regime::kFederated)) fed_tunings_.clear();
    if (!cfg_.Has(Regime::kCentralized)) cen_tunings_.clear();
  }

  ExperimentReport Run() {
    for (int f = 0; f < plan_.k; ++f) RunFold(f);
    BuildRows();
    BuildCosts();
    for (auto& [what, s] : timing_) report_.timing.push_back({what, s});
    return std::move(report_);
  }

 private:
  struct FoldData {
    int fold = 0;
    std::vector<size_t> train, test;
    gbt::TrainOptions train_opts;
    hpo::TuneSettings tune;
    std::vector<data::PartyDataset> party_train, party_test;      // as federated
    std::vector<data::PartyDataset> labeled_train, labeled_test;  // for separate
    data::PartyDataset pooled_train, pooled_test;
    std::map<std::string, hpo::TunedParams> local_tuned;  // by party
    std::optional<hpo::TunedParams> aggregated;
  };

  FoldData MakeFold(int f) {
    FoldData d;
    d.fold = f;
    d.train = Concat(plan_.folds[f]);
    d.test = plan_.folds[f].test;
    d.train_opts.seed = DeriveSeed(cfg_.seed, {0x666f6c64, static_cast<uint64_t>(f)});
    d.train_opts.binning = hfl_ ? gbt::BinningScope::kGlobal : cfg_.vfl_binning;
    d.tune.base = cfg_.params;
    d.tune.train = d.train_opts;
    d.tune.bo = cfg_.bo;
    d.tune.bo.seed = DeriveSeed(cfg_.seed, {0x626f, static_cast<uint64_t>(f)});
    d.tune.valid_fraction = cfg_.valid_fraction;
    d.pooled_train = pooled_.SelectRows(d.train);
    d.pooled_test = pooled_.SelectRows(d.test);
    if (hfl_) {
      for (size_t p = 0; p < parties_.size(); ++p) {
        std::vector<size_t> tr, te;
        for (size_t r : d.train) {
          if (party_of_row_[r] == static_cast<int>(p)) tr.push_back(r);
        }
        for (size_t r : d.test) {
          if (party_of_row_[r] == static_cast<int>(p)) te.push_back(r);
        }
        d.party_train.push_back(pooled_.SelectRows(tr));
        d.party_test.push_back(pooled_.SelectRows(te));
        d.party_train.back().party_id = parties_[p].party_id;
        d.party_test.back().party_id = parties_[p].party_id;
      }
      d.labeled_train = d.party_train;
      d.labeled_test = d.party_test;
    } else {
      for (size_t p = 0; p < parties_.size(); ++p) {
        d.party_train.push_back(parties_[p].SelectRows(d.train));
        d.party_test.push_back(parties_[p].SelectRows(d.test));
        d.labeled_train.push_back(labeled_[p].SelectRows(d.train));
        d.labeled_test.push_back(labeled_[p].SelectRows(d.test));
      }
    }
    return d;
  }

  // Runs `fn`, charging its time to `what`; failures are recorded under
  // `key` and reported as false.
  bool Guard(const std::string& key, const std::string& what, const std::function<void()>& fn) {
    if (failed_.count(key)) return false;
    const auto start = Clock::now();
    try {
      fn();
    } catch (const std::exception& e) {
      failed_[key] = e.what();
      timing_[what] += Seconds(start);
      return false;
    }
    timing_[what] += Seconds(start);
    return true;
  }

  gbt::GbtParams Params(const hpo::TunedParams& t) const {
    return hpo::SearchSpace::BoosterDefault().Apply(cfg_.params, t.values);
  }

  const hpo::TunedParams& LocalTuned(FoldData& d, size_t p) {
    const std::string& id = parties_[p].party_id;
    auto it = d.local_tuned.find(id);
    if (it != d.local_tuned.end()) return it->second;
    hpo::TunedParams t = hpo::TuneDirect(d.labeled_train[p], d.tune);
    return d.local_tuned.emplace(id, std::move(t)).first->second;
  }

  // Each party tunes locally and reports to the coordinator, which
  // broadcasts the size-weighted average back.
  const hpo::TunedParams& Aggregated(FoldData& d) {
    if (d.aggregated) return *d.aggregated;
    std::vector<hpo::TunedParams> locals;
    for (size_t p = 0; p < parties_.size(); ++p) locals.push_back(LocalTuned(d, p));

    MessageBus bus;
    const std::string coordinator = hfl_ ? "server" : parties_[0].party_id;
    bus.Register(coordinator);
    for (const auto& p : parties_) {
      if (!bus.IsRegistered(p.party_id)) bus.Register(p.party_id);
    }
    const int64_t round = bus.NextRound();
    std::vector<hpo::PartyTuned> received;
    std::vector<std::string> senders;
    for (size_t p = 0; p < parties_.size(); ++p) {
      const auto& id = parties_[p].party_id;
      const int64_t n = static_cast<int64_t>(d.labeled_train[p].num_samples());
      if (id == coordinator) {
        received.push_back({locals[p], n});
        continue;
      }
      bus.Send(id, coordinator, round, msg::kTunedParams,
               {{"fold", d.fold}, {"params", hpo::ToJson(locals[p])}, {"num_samples", n}});
      senders.push_back(id);
    }
    for (const auto& e : bus.Collect(coordinator, senders, msg::kTunedParams, round)) {
      json p = e.Payload();
      received.push_back({hpo::TunedParamsFromJson(p.at("params")),
                          p.at("num_samples").get<int64_t>()});
    }
    hpo::TunedParams agg = hpo::AggregateParams(received, d.tune.space);
    const int64_t round2 = bus.NextRound();
    for (const auto& p : parties_) {
      if (p.party_id == coordinator) continue;
      bus.Send(coordinator, p.party_id, round2, msg::kTunedBroadcast,
               {{"fold", d.fold}, {"params", hpo::ToJson(agg)}});
    }
    for (const auto& p : parties_) {
      if (p.party_id == coordinator) continue;
      agg = hpo::TunedParamsFromJson(
          bus.Receive(p.party_id, coordinator, msg::kTunedBroadcast, round2).Payload().at(
              "params"));
    }
    AddTraffic(report_.tuning_traffic, bus);
    ScanPolicy policy;
    std::vector<PartySecrets> secrets;
    for (const auto& p : d.labeled_train) {
      PartySecrets s;
      s.party = p.party_id;
      s.label_vectors.push_back(*p.labels);
      secrets.push_back(std::move(s));
    }
    ScanReport scan = ScanTranscript(bus.transcript(), policy, secrets);
    report_.scans.push_back({"tuning", d.fold, scan.messages, scan.findings.size(), scan.Verdict()});
    d.aggregated = agg;
    return *d.aggregated;
  }

  void Record(Regime r, const std::string& tuning, const std::string& party, int fold,
              const hpo::TunedParams& t) {
    report_.tuned.push_back({r, tuning, party, fold, t});
  }

  void StorePred(const std::string& key, int fold, std::vector<double> probs) {
    auto& v = preds_[key];
    v.resize(plan_.k);
    v[fold] = std::move(probs);
  }

  void StoreHash(const std::string& key, int fold, std::string hash) {
    auto& v = report_.model_hashes[key];
    v.resize(plan_.k);
    v[fold] = std::move(hash);
  }

  void RunSeparate(FoldData& d) {
    for (const std::string& t : sep_tunings_) {
      for (size_t p = 0; p < parties_.size(); ++p) {
        const std::string& id = parties_[p].party_id;
        const std::string key = Key(Regime::kSeparate, t, id);
        Guard(key, Key(Regime::kSeparate, t), [&] {
          gbt::GbtParams params = cfg_.params;
          if (t == kDirect) {
            const auto& tuned = LocalTuned(d, p);
            Record(Regime::kSeparate, t, id, d.fold, tuned);
            params = Params(tuned);
          }
          gbt::BoostedEnsemble m = gbt::TrainCentralized(d.labeled_train[p], params, d.train_opts);
          StoreHash(key, d.fold, gbt::ModelHash(m));
          StorePred(key, d.fold, gbt::PredictProbabilities(m, d.labeled_test[p]));
        });
      }
    }
  }

  void RunFederated(FoldData& d) {
    for (const std::string& t : fed_tunings_) {
      const std::string key = Key(Regime::kFederated, t);
      Guard(key, key, [&] {
        gbt::GbtParams params = cfg_.params;
        if (t == kAggregated) {
          const auto& tuned = Aggregated(d);
          Record(Regime::kFederated, t, "all", d.fold, tuned);
          params = Params(tuned);
        }
        MessageBus bus;
        std::vector<PartySecrets> secrets;
        ScanPolicy policy;
        if (hfl_) {
          fed::HflRoster roster = fed::MakeHflRoster(
              d.party_train, DeriveSeed(cfg_.seed, {0x6d61736b, static_cast<uint64_t>(d.fold)}));
          fed::HflOptions opts;
          opts.mode = cfg_.secagg;
          opts.key_bits = cfg_.key_bits;
          opts.train = d.train_opts;
          opts.record_secrets = true;
          fed::HflResult res = fed::HflTrain(bus, roster, d.party_train, params, opts);
          StoreHash(key, d.fold, gbt::ModelHash(res.model));
          StorePred(key, d.fold, gbt::PredictProbabilities(res.model, d.pooled_test));
          secrets = std::move(res.secrets);
          policy = HorizontalPolicy(roster.client_ids);
        } else {
          fed::VflRoster roster = fed::DefaultVflRoster(d.party_train);
          fed::VflOptions opts;
          opts.key_bits = cfg_.key_bits;
          opts.train = d.train_opts;
          opts.record_secrets = true;
          std::span<const data::PartyDataset> train(d.party_train);
          std::span<const data::PartyDataset> test(d.party_test);
          fed::VflResult res =
              fed::VflTrain(bus, roster, train[0], train.subspan(1), params, opts);
          StoreHash(key, d.fold, gbt::ModelHash(fed::ResolveThresholds(res.model)));
          StorePred(key, d.fold,
                    fed::VflPredict(bus, roster, res.model, test[0], test.subspan(1)));
          secrets = std::move(res.secrets);
          policy = VerticalPolicy(roster.passive_ids);
        }
        AddTraffic(report_.training_traffic, bus);
        ScanReport scan = ScanTranscript(bus.transcript(), policy, secrets);
        report_.scans.push_back(
            {"training", d.fold, scan.messages, scan.findings.size(), scan.Verdict()});
        if (t == fed_tunings_.front()) report_.transcripts.push_back(bus.transcript());
      });
    }
  }

  void RunCentralized(FoldData& d) {
    for (const std::string& t : cen_tunings_) {
      const std::string key = Key(Regime::kCentralized, t);
      Guard(key, key, [&] {
        gbt::GbtParams params = cfg_.params;
        if (t == kAggregated) {
          const auto& tuned = Aggregated(d);
          Record(Regime::kCentralized, t, "all", d.fold, tuned);
          params = Params(tuned);
        } else if (t == kDirect) {
          hpo::TunedParams tuned = hpo::TuneDirect(d.pooled_train, d.tune);
          Record(Regime::kCentralized, t, "all", d.fold, tuned);
          params = Params(tuned);
        }
        gbt::BoostedEnsemble m = gbt::TrainCentralized(d.pooled_train, params, d.train_opts);
        StoreHash(key, d.fold, gbt::ModelHash(m));
        StorePred(key, d.fold, gbt::PredictProbabilities(m, d.pooled_test));
      });
    }
  }

  void RunFold(int f) {
    FoldData d = MakeFold(f);
    RunSeparate(d);
    RunFederated(d);
    RunCentralized(d);
  }

  // Metrics of `key` on the test rows of `party` ("all" = every test row).
  ReportRow Evaluate(Regime r, const std::string& tuning, const std::string& party,
                     const std::string& key, bool subset) {
    ReportRow row;
    row.regime = r;
    row.tuning = tuning;
    row.party = party;
    row.safe = r != Regime::kCentralized;
    auto fail = failed_.find(key);
    if (fail != failed_.end()) {
      row.error = fail->second;
      return row;
    }
    try {
      for (int f = 0; f < plan_.k; ++f) {
        const auto& test = plan_.folds[f].test;
        const auto& probs = preds_.at(key).at(f);
        std::vector<int> y;
        std::vector<double> p;
        if (!subset) {
          // Predictions cover the party's own test rows, in order.
          for (size_t r : test) {
            if (!hfl_ || report_.parties[party_of_row_[r]] == party) y.push_back(labels_[r]);
          }
          p = probs;
        } else {
          for (size_t i = 0; i < test.size(); ++i) {
            if (party != "all" && report_.parties[party_of_row_[test[i]]] != party) continue;
            y.push_back(labels_[test[i]]);
            p.push_back(probs[i]);
          }
        }
        if (y.size() != p.size()) throw ConsistencyError("prediction count mismatch for " + key);
        row.folds.push_back(eval::Evaluate(y, p, f, row.Label()));
      }
      row.mean = eval::Average(row.folds, row.Label());
    } catch (const std::exception& e) {
      row.folds.clear();
      row.error = e.what();
    }
    return row;
  }

  void BuildRows() {
    for (const auto& id : report_.parties) {
      for (const auto& t : sep_tunings_) {
        report_.rows.push_back(
            Evaluate(Regime::kSeparate, t, id, Key(Regime::kSeparate, t, id), false));
      }
    }
    std::vector<std::string> views = {"all"};
    if (hfl_) views.insert(views.end(), report_.parties.begin(), report_.parties.end());
    for (Regime r : {Regime::kFederated, Regime::kCentralized}) {
      const auto& tunings = r == Regime::kFederated ? fed_tunings_ : cen_tunings_;
      for (const auto& t : tunings) {
        for (const auto& v : views) report_.rows.push_back(Evaluate(r, t, v, Key(r, t), true));
      }
    }
  }

  const ReportRow* Find(Regime r, const std::string& t, const std::string& party) const {
    for (const auto& row : report_.rows) {
      if (row.regime == r && row.tuning == t && row.party == party && row.error.empty()) {
        return &row;
      }
    }
    return nullptr;
  }

  void AddCosts(eval::PrivacyCostKind kind, const std::string& tuning, const std::string& party,
                const ReportRow& open, const ReportRow& other) {
    const std::pair<const char*, double eval::MetricReport::*> metrics[] = {
        {"auc", &eval::MetricReport::auc},
        {"accuracy", &eval::MetricReport::accuracy},
        {"f1", &eval::MetricReport::f1}};
    for (const auto& [name, field] : metrics) {
      report_.costs.push_back(
          {tuning, party, eval::ComputePrivacyCost(kind, name, open.mean.*field, other.mean.*field)});
    }
  }

  void BuildCosts() {
    for (const auto& t : cen_tunings_) {
      const ReportRow* open = Find(Regime::kCentralized, t, "all");
      if (!open) continue;
      if (const ReportRow* fed = Find(Regime::kFederated, t, "all")) {
        AddCosts(eval::PrivacyCostKind::kFederated, t, "all", *open, *fed);
      }
      for (const auto& id : report_.parties) {
        if (const ReportRow* sep = Find(Regime::kSeparate, t, id)) {
          AddCosts(eval::PrivacyCostKind::kOpenShare, t, id, *open, *sep);
        }
      }
    }
  }

  const ExperimentConfig& cfg_;
  bool hfl_ = true;
  std::vector<data::PartyDataset> parties_;
  std::vector<data::PartyDataset> labeled_;
  data::PartyDataset pooled_;
  std::vector<int> party_of_row_;
  std::vector<int> labels_;
  data::FoldPlan plan_;
  std::vector<std::string> sep_tunings_, fed_tunings_, cen_tunings_;
  std::map<std::string, std::vector<std::vector<double>>> preds_;
  std::map<std::string, std::string> failed_;
  std::map<std::string, double> timing_;
  ExperimentReport report_;
};

}  // namespace

std::string ReportRow::Label() const {
  return ToString(regime) + "/" + tuning + "/" + party;
}

std::vector<data::PartyDataset> LoadParties(const ExperimentConfig& config) {
  config.Validate();
  const auto& schema = data::WellFeatureSchema();
  std::vector<data::PartyDataset> districts;
  if (config.data.csv_paths.empty()) {
    districts = data::GenerateDistricts(config.data.synth);
  } else {
    for (const auto& path : config.data.csv_paths) {
      districts.push_back(
          data::LoadCsv(path, schema, std::filesystem::path(path).stem().string()));
    }
  }
  for (const auto& d : districts) {
    if (!d.has_labels()) throw DataError("dataset " + d.party_id + " has no labels");
  }
  if (config.scenario == Scenario::kHflCaseOne) {
    if (districts.size() < 2) throw ConfigError("hfl_case_one needs at least two districts");
    return data::HorizontalPartition(districts);
  }
  data::PartyDataset joined =
      districts.size() == 1 ? districts[0] : data::HorizontalUnion(districts, "joined");
  return data::VerticalPartition(joined, config.vertical);
}

ExperimentReport RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  return Runner(config).Run();
}

}  // namespace fedxgb::orchestrator
