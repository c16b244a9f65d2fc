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

#include "fedxgb/fed/hfl.h"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/rng.h"
#include "fedxgb/gbt/gradients.h"
#include "fedxgb/gbt/grower.h"
#include "fedxgb/gbt/histogram.h"
#include "fedxgb/gbt/trainer.h"
#include "fedxgb/phe/serialization.h"

namespace fedxgb::fed {
namespace {

namespace msg = orchestrator::msg;
using nlohmann::json;
using orchestrator::MessageBus;

json Get(const orchestrator::Envelope& e) {
  try {
    return e.Payload();
  } catch (const json::exception& ex) {
    throw ProtocolError(e.type + " from " + e.sender + " is not valid JSON: " + ex.what());
  }
}

class HflClient {
 public:
  HflClient(MessageBus& bus, const HflRoster& roster, int index,
            const data::PartyDataset& data, const gbt::GbtParams& params,
            const HflOptions& options)
      : bus_(bus),
        roster_(roster),
        index_(index),
        id_(roster.client_ids[index]),
        data_(data),
        params_(params),
        options_(options),
        masker_(index, static_cast<int>(roster.client_ids.size()), roster.pair_seeds) {
    secrets_.party = id_;
    if (options.record_secrets) {
      secrets_.feature_values = data.x.values();
      secrets_.label_vectors.push_back(*data.labels);
    }
  }

  void OnKey(int64_t round) {
    json p = Get(bus_.Receive(id_, roster_.server_id, msg::kKeyBroadcast, round));
    if (options_.mode == SecAggMode::kPaillierMask) {
      pk_ = phe::PublicKey{};
      pk_->n = phe::FromHex(p.at("n").get<std::string>());
      pk_->g = phe::FromHex(p.at("g").get<std::string>());
      pk_->n_squared = pk_->n * pk_->n;
      encryptor_ = std::make_unique<phe::Encryptor>(
          *pk_, DeriveSeed(options_.train.seed, {0x656e63, static_cast<uint64_t>(index_)}));
    }
    json mins = json::array(), maxs = json::array();
    for (size_t f = 0; f < data_.num_features(); ++f) {
      auto col = data_.x.column(f);
      auto [lo, hi] = std::minmax_element(col.begin(), col.end());
      mins.push_back(*lo);
      maxs.push_back(*hi);
    }
    bus_.Send(id_, roster_.server_id, round, msg::kRangeReport,
              {{"min", mins}, {"max", maxs}});
  }

  void OnBinning(int64_t round) {
    json p = Get(bus_.Receive(id_, roster_.server_id, msg::kBinningBroadcast, round));
    const auto thresholds = p.at("thresholds").get<std::vector<std::vector<double>>>();
    if (thresholds.size() != data_.num_features()) {
      throw ProtocolError(id_ + ": binning covers " + std::to_string(thresholds.size()) +
                          " features, client has " + std::to_string(data_.num_features()));
    }
    num_bins_ = p.at("max_bin").get<int>();
    const int nf = static_cast<int>(data_.num_features());
    std::vector<gbt::BinBoundaries> bounds;
    for (int f = 0; f < nf; ++f) bounds.emplace_back(f, thresholds[f]);
    feature_ids_.resize(nf);
    std::iota(feature_ids_.begin(), feature_ids_.end(), 0);
    binned_.num_features = nf;
    binned_.bins.resize(data_.num_samples() * nf);
    for (size_t r = 0; r < data_.num_samples(); ++r) {
      for (int f = 0; f < nf; ++f) binned_.bins[r * nf + f] = bounds[f].Bin(data_.x.at(r, f));
    }
    margins_.assign(data_.num_samples(), p.at("base_score_logit").get<double>());
  }

  void OnSplitBroadcast(int64_t round) {
    json p = Get(bus_.Receive(id_, roster_.server_id, msg::kSplitBroadcast, round));
    const int tree = p.at("tree").get<int>();
    if (tree != tree_) StartTree(tree);
    json reports = json::array();
    for (const auto& s : p.at("splits")) {
      const int node = s.at("node").get<int>();
      const int f = s.at("feature_id").get<int>();
      const int bin = s.at("bin").get<int>();
      auto it = node_rows_.find(node);
      if (it == node_rows_.end()) throw ProtocolError(id_ + ": split of unknown node");
      std::vector<int> left, right;
      int64_t nl = 0, nr = 0;
      for (int r : it->second) {
        const bool go_left = binned_.bins[r * binned_.num_features + f] <= bin;
        (go_left ? left : right).push_back(r);
        if (in_bag_[r]) ++(go_left ? nl : nr);
      }
      node_rows_[s.at("left").get<int>()] = std::move(left);
      node_rows_[s.at("right").get<int>()] = std::move(right);
      reports.push_back({{"node", node}, {"left", nl}, {"right", nr}});
    }
    if (!reports.empty()) {
      bus_.Send(id_, roster_.server_id, round, msg::kPartitionReport,
                {{"tree", tree}, {"nodes", reports}});
    }
    const auto request = p.at("request").get<std::vector<int>>();
    if (!request.empty()) {
      json nodes = json::array();
      for (int node : request) {
        auto it = node_rows_.find(node);
        if (it == node_rows_.end()) throw ProtocolError(id_ + ": histogram of unknown node");
        std::vector<int> rows;
        for (int r : it->second) {
          if (in_bag_[r]) rows.push_back(r);
        }
        gbt::GradHistogram h =
            gbt::BuildHistogram(binned_, grads_, rows, feature_ids_, num_bins_);
        if (options_.record_secrets) {
          for (const auto& s : h.slots()) {
            secrets_.secret_integers.push_back(s.g);
            secrets_.secret_integers.push_back(s.h);
          }
          secrets_.secret_integers.push_back(h.total().g);
          secrets_.secret_integers.push_back(h.total().h);
        }
        MaskedHistogram m = MaskHistogram(h, node, static_cast<uint64_t>(tree), masker_,
                                          options_.mode, pk_ ? &*pk_ : nullptr,
                                          encryptor_.get());
        nodes.push_back(ToJson(m, options_.mode));
      }
      bus_.Send(id_, roster_.server_id, round, msg::kHistogramSubmit,
                {{"tree", tree}, {"nodes", nodes}});
    }
    if (p.value("finish", false)) {
      for (const auto& leaf : p.at("leaves")) {
        auto it = node_rows_.find(leaf.at("node").get<int>());
        if (it == node_rows_.end()) continue;
        const double w = leaf.at("weight").get<double>();
        for (int r : it->second) margins_[r] += params_.learning_rate * w;
      }
    }
  }

  gbt::BoostedEnsemble OnModel(int64_t round) {
    json p = Get(bus_.Receive(id_, roster_.server_id, msg::kModelDelivery, round));
    return gbt::EnsembleFromJson(p.at("model"));
  }

  const orchestrator::PartySecrets& secrets() const { return secrets_; }

 private:
  void StartTree(int tree) {
    tree_ = tree;
    const auto& labels = *data_.labels;
    const size_t n = data_.num_samples();
    std::vector<gbt::GradPair> g(n);
    for (size_t r = 0; r < n; ++r) g[r] = gbt::LogisticGradients(labels[r], margins_[r]);
    grads_ = gbt::Quantize(g);
    in_bag_.assign(n, 0);
    for (size_t r = 0; r < n; ++r) {
      in_bag_[r] = gbt::InBag(options_.train.seed, tree, data_.sample_ids[r], params_.subsample);
    }
    node_rows_.clear();
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    node_rows_[0] = std::move(all);
  }

  MessageBus& bus_;
  const HflRoster& roster_;
  int index_;
  std::string id_;
  const data::PartyDataset& data_;
  const gbt::GbtParams& params_;
  const HflOptions& options_;
  PairwiseMasker masker_;
  std::optional<phe::PublicKey> pk_;
  std::unique_ptr<phe::Encryptor> encryptor_;

  int num_bins_ = 0;
  std::vector<int> feature_ids_;
  gbt::BinnedRows binned_;
  std::vector<double> margins_;
  int tree_ = -1;
  std::vector<gbt::QuantizedGrad> grads_;
  std::vector<char> in_bag_;
  std::map<int, std::vector<int>> node_rows_;
  orchestrator::PartySecrets secrets_;
};

class HflServer : public gbt::HistogramBackend {
 public:
  HflServer(MessageBus& bus, const HflRoster& roster, std::vector<HflClient>& clients,
            const gbt::GbtParams& params, const HflOptions& options)
      : bus_(bus), roster_(roster), clients_(clients), params_(params), options_(options) {}

  void Setup() {
    if (options_.mode == SecAggMode::kPaillierMask) {
      if (options_.key.has_value()) {
        key_ = options_.key;
      } else {
        phe::KeyGenOptions ko;
        ko.key_bits = options_.key_bits;
        ko.seed = DeriveSeed(options_.train.seed, {0x6b6579});
        key_ = phe::GenerateKeyPair(ko);
      }
      if (key_->public_key.bits() < 130) {
        throw ConfigError("HFL needs a key of at least 130 bits to carry 64-bit sums");
      }
    }
    int64_t round = bus_.NextRound();
    json key_msg = {{"mode", ToString(options_.mode)}};
    if (key_.has_value()) {
      key_msg["n"] = phe::ToHex(key_->public_key.n);
      key_msg["g"] = phe::ToHex(key_->public_key.g);
    }
    for (const auto& c : roster_.client_ids) {
      bus_.Send(roster_.server_id, c, round, msg::kKeyBroadcast, key_msg);
    }
    for (auto& c : clients_) c.OnKey(round);
    std::vector<std::vector<FeatureRange>> ranges;
    for (const auto& e : bus_.Collect(roster_.server_id, roster_.client_ids,
                                      msg::kRangeReport, round)) {
      json p = Get(e);
      auto mins = p.at("min").get<std::vector<double>>();
      auto maxs = p.at("max").get<std::vector<double>>();
      if (mins.size() != maxs.size()) throw ProtocolError("malformed RANGE_REPORT");
      std::vector<FeatureRange> r;
      for (size_t f = 0; f < mins.size(); ++f) r.push_back({mins[f], maxs[f]});
      ranges.push_back(std::move(r));
    }
    bins_ = GlobalBinning(ranges, params_.max_bin);
    num_features_ = static_cast<int>(bins_.size());
    feature_ids_.resize(num_features_);
    std::iota(feature_ids_.begin(), feature_ids_.end(), 0);
    base_ = gbt::InitialLogit(params_, options_.train);

    round = bus_.NextRound();
    json thresholds = json::array();
    for (const auto& b : bins_) thresholds.push_back(b.thresholds());
    for (const auto& c : roster_.client_ids) {
      bus_.Send(roster_.server_id, c, round, msg::kBinningBroadcast,
                {{"max_bin", params_.max_bin},
                 {"thresholds", thresholds},
                 {"base_score_logit", base_}});
    }
    for (auto& c : clients_) c.OnBinning(round);
  }

  void StartTree(int tree) {
    tree_ = tree;
    pending_.clear();
  }

  std::vector<gbt::GradHistogram> Histograms(std::span<const int> node_ids) override {
    const int64_t round = Broadcast(node_ids, nullptr);
    std::vector<std::vector<MaskedHistogram>> per_node(node_ids.size());
    for (const auto& e : bus_.Collect(roster_.server_id, roster_.client_ids,
                                      msg::kHistogramSubmit, round)) {
      json p = Get(e);
      const auto& nodes = p.at("nodes");
      if (p.at("tree").get<int>() != tree_ || nodes.size() != node_ids.size()) {
        throw ProtocolError("HISTOGRAM_SUBMIT from " + e.sender + " does not match the request");
      }
      for (size_t k = 0; k < node_ids.size(); ++k) {
        MaskedHistogram m = MaskedHistogramFromJson(nodes[k], options_.mode);
        if (m.node != node_ids[k]) {
          throw ProtocolError("HISTOGRAM_SUBMIT from " + e.sender + " lists node " +
                              std::to_string(m.node) + " out of order");
        }
        per_node[k].push_back(std::move(m));
      }
    }
    std::vector<gbt::GradHistogram> out;
    for (auto& parts : per_node) {
      out.push_back(AggregateMasked(parts, feature_ids_, params_.max_bin, options_.mode,
                                    key_ ? &*key_ : nullptr));
    }
    return out;
  }

  std::vector<gbt::SplitRecord> ApplySplits(std::span<const gbt::NodeSplit> splits) override {
    std::vector<gbt::SplitRecord> records;
    for (const auto& s : splits) {
      records.push_back({bins_.at(s.candidate.feature_id).threshold(s.candidate.bin), 0, -1});
      pending_.push_back(s);
    }
    return records;
  }

  void FinishTree(const gbt::RegressionTree& tree) override { Broadcast({}, &tree); }

  std::vector<gbt::BoostedEnsemble> Deliver(const gbt::BoostedEnsemble& model) {
    const int64_t round = bus_.NextRound();
    json payload = {{"model", gbt::ToJson(model)}};
    for (const auto& c : roster_.client_ids) {
      bus_.Send(roster_.server_id, c, round, msg::kModelDelivery, payload);
    }
    std::vector<gbt::BoostedEnsemble> out;
    for (auto& c : clients_) out.push_back(c.OnModel(round));
    return out;
  }

  double base() const { return base_; }
  int num_features() const { return num_features_; }
  const std::vector<gbt::BinBoundaries>& bins() const { return bins_; }

 private:
  // Sends the pending splits (and leaves when finishing), lets the clients
  // respond and checks their partition counts.
  int64_t Broadcast(std::span<const int> request, const gbt::RegressionTree* finished) {
    const int64_t round = bus_.NextRound();
    json splits = json::array();
    for (const auto& s : pending_) {
      splits.push_back({{"node", s.node_id},
                        {"feature_id", s.candidate.feature_id},
                        {"bin", s.candidate.bin},
                        {"left", s.left_id},
                        {"right", s.right_id}});
    }
    json payload = {{"tree", tree_},
                    {"splits", splits},
                    {"request", std::vector<int>(request.begin(), request.end())}};
    if (finished != nullptr) {
      json leaves = json::array();
      for (const auto& n : finished->nodes) {
        if (n.is_leaf) leaves.push_back({{"node", n.id}, {"weight", n.weight}});
      }
      payload["leaves"] = leaves;
      payload["finish"] = true;
    }
    for (const auto& c : roster_.client_ids) {
      bus_.Send(roster_.server_id, c, round, msg::kSplitBroadcast, payload);
    }
    for (auto& c : clients_) c.OnSplitBroadcast(round);
    if (!pending_.empty()) {
      std::map<int, std::pair<int64_t, int64_t>> counts;
      for (const auto& e : bus_.Collect(roster_.server_id, roster_.client_ids,
                                        msg::kPartitionReport, round)) {
        const json report = Get(e);
        for (const auto& n : report.at("nodes")) {
          auto& c = counts[n.at("node").get<int>()];
          c.first += n.at("left").get<int64_t>();
          c.second += n.at("right").get<int64_t>();
        }
      }
      for (const auto& s : pending_) {
        const auto& c = counts[s.node_id];
        if (c.first != s.candidate.left.count || c.second != s.candidate.right.count) {
          throw ProtocolError("partition counts for node " + std::to_string(s.node_id) +
                              " disagree with the aggregated histogram");
        }
      }
      pending_.clear();
    }
    return round;
  }

  MessageBus& bus_;
  const HflRoster& roster_;
  std::vector<HflClient>& clients_;
  const gbt::GbtParams& params_;
  const HflOptions& options_;
  std::optional<phe::KeyPair> key_;
  std::vector<gbt::BinBoundaries> bins_;
  std::vector<int> feature_ids_;
  int num_features_ = 0;
  double base_ = 0.0;
  int tree_ = -1;
  std::vector<gbt::NodeSplit> pending_;
};

}  // namespace

void HflRoster::Validate() const {
  if (client_ids.empty()) throw ConfigError("HFL roster has no clients");
  if (sample_counts.size() != client_ids.size()) {
    throw ConfigError("HFL roster needs one sample count per client");
  }
  std::set<std::string> ids(client_ids.begin(), client_ids.end());
  ids.insert(server_id);
  if (ids.size() != client_ids.size() + 1) throw ConfigError("HFL roster ids must be unique");
  for (int64_t n : sample_counts) {
    if (n < 1) throw ConfigError("HFL clients need at least one sample");
  }
  const int m = static_cast<int>(client_ids.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (pair_seeds.count({i, j}) == 0) {
        throw ConfigError("HFL roster lacks a mask seed for clients " + std::to_string(i) +
                          " and " + std::to_string(j));
      }
    }
  }
}

HflRoster MakeHflRoster(std::span<const data::PartyDataset> clients, uint64_t seed,
                        const std::string& server_id) {
  HflRoster r;
  r.server_id = server_id;
  for (const auto& c : clients) {
    r.client_ids.push_back(c.party_id);
    r.sample_counts.push_back(static_cast<int64_t>(c.num_samples()));
  }
  r.pair_seeds = MakePairSeeds(seed, static_cast<int>(clients.size()));
  return r;
}

std::vector<gbt::BinBoundaries> GlobalBinning(
    std::span<const std::vector<FeatureRange>> client_ranges, int max_bin) {
  if (client_ranges.empty()) throw ProtocolError("no feature ranges reported");
  const size_t nf = client_ranges[0].size();
  for (const auto& r : client_ranges) {
    if (r.size() != nf) throw ProtocolError("clients report different feature counts");
  }
  std::vector<gbt::BinBoundaries> out;
  for (size_t f = 0; f < nf; ++f) {
    double lo = client_ranges[0][f].min, hi = client_ranges[0][f].max;
    for (const auto& r : client_ranges) {
      lo = std::min(lo, r[f].min);
      hi = std::max(hi, r[f].max);
    }
    out.push_back(gbt::BinsFromRange(lo, hi, max_bin, static_cast<int>(f)));
  }
  return out;
}

HflResult HflTrain(MessageBus& bus, const HflRoster& roster,
                   std::span<const data::PartyDataset> clients, const gbt::GbtParams& params,
                   const HflOptions& options) {
  params.Validate();
  roster.Validate();
  if (options.train.binning != gbt::BinningScope::kGlobal) {
    throw ConfigError("HFL training supports global binning only");
  }
  if (clients.size() != roster.client_ids.size()) {
    throw ConfigError("one dataset per HFL client required");
  }
  for (size_t i = 0; i < clients.size(); ++i) {
    clients[i].Validate();
    if (!clients[i].has_labels()) {
      throw DataError("HFL client " + roster.client_ids[i] + " has no labels");
    }
    if (clients[i].num_features() != clients[0].num_features() ||
        clients[i].features != clients[0].features) {
      throw DataError("HFL clients must share one feature schema");
    }
  }
  if (!bus.IsRegistered(roster.server_id)) bus.Register(roster.server_id);
  for (const auto& c : roster.client_ids) {
    if (!bus.IsRegistered(c)) bus.Register(c);
  }

  std::vector<HflClient> actors;
  actors.reserve(clients.size());
  for (size_t i = 0; i < clients.size(); ++i) {
    actors.emplace_back(bus, roster, static_cast<int>(i), clients[i], params, options);
  }
  HflServer server(bus, roster, actors, params, options);
  server.Setup();

  HflResult result;
  result.model.params = params;
  result.model.base_score_logit = server.base();
  result.model.num_features = server.num_features();
  for (int t = 0; t < params.n_estimators; ++t) {
    server.StartTree(t);
    result.model.trees.push_back(gbt::GrowTree(params, server, gbt::GrowOptions{true}));
  }
  result.client_models = server.Deliver(result.model);
  result.bins = server.bins();
  if (options.record_secrets) {
    for (const auto& a : actors) result.secrets.push_back(a.secrets());
  }
  return result;
}

}  // namespace fedxgb::fed
