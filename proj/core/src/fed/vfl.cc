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

#include "fedxgb/fed/vfl.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <unordered_map>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/rng.h"
#include "fedxgb/gbt/binning.h"
#include "fedxgb/gbt/gradients.h"
#include "fedxgb/gbt/grower.h"
#include "fedxgb/gbt/histogram.h"
#include "fedxgb/gbt/trainer.h"
#include "fedxgb/phe/codec.h"
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

std::unordered_map<int64_t, size_t> RowIndex(const data::PartyDataset& d) {
  std::unordered_map<int64_t, size_t> idx;
  for (size_t r = 0; r < d.num_samples(); ++r) idx[d.sample_ids[r]] = r;
  return idx;
}

std::vector<gbt::BinBoundaries> BinsOver(const data::PartyDataset& d,
                                         std::span<const size_t> rows, int max_bin) {
  std::vector<gbt::BinBoundaries> out;
  for (size_t c = 0; c < d.num_features(); ++c) {
    const int fid = d.GlobalFeatureId(c);
    if (rows.empty()) {
      out.push_back(gbt::BinsFromRange(0.0, 0.0, max_bin, fid));
      continue;
    }
    std::vector<double> col;
    col.reserve(rows.size());
    for (size_t r : rows) col.push_back(d.x.at(r, c));
    out.push_back(gbt::ComputeBins(col, max_bin, fid));
  }
  return out;
}

std::vector<size_t> AllRows(const data::PartyDataset& d) {
  std::vector<size_t> rows(d.num_samples());
  std::iota(rows.begin(), rows.end(), size_t{0});
  return rows;
}

class VflPassive {
 public:
  VflPassive(MessageBus& bus, const VflRoster& roster, int index,
             const data::PartyDataset& data, const VflOptions& options)
      : bus_(bus),
        roster_(roster),
        index_(index),
        id_(roster.party(index)),
        data_(data),
        options_(options),
        rows_(RowIndex(data)) {
    secrets_.party = id_;
    if (options.record_secrets) secrets_.feature_values = data.x.values();
    for (size_t c = 0; c < data.num_features(); ++c) {
      column_of_[data.GlobalFeatureId(c)] = c;
    }
  }

  void OnKey(int64_t round) {
    json p = Get(bus_.Receive(id_, roster_.active_id, msg::kKeyBroadcast, round));
    pk_.n = phe::FromHex(p.at("n").get<std::string>());
    pk_.g = phe::FromHex(p.at("g").get<std::string>());
    pk_.n_squared = pk_.n * pk_.n;
    max_bin_ = p.at("max_bin").get<int>();
    per_node_ = gbt::BinningScopeFromString(p.at("binning").get<std::string>()) ==
                gbt::BinningScope::kPerNode;
    if (!per_node_) global_bounds_ = BinsOver(data_, AllRows(data_), max_bin_);
  }

  void OnGradients(int64_t round) {
    json p = Get(bus_.Receive(id_, roster_.active_id, msg::kGradientBroadcast, round));
    tree_ = p.at("tree").get<int>();
    const auto ids = p.at("ids").get<std::vector<int64_t>>();
    const auto& g = p.at("g");
    const auto& h = p.at("h");
    if (g.size() != ids.size() || h.size() != ids.size()) {
      throw ProtocolError(id_ + ": GRADIENT_BROADCAST length mismatch");
    }
    enc_g_.clear();
    enc_h_.clear();
    for (size_t i = 0; i < ids.size(); ++i) {
      enc_g_[ids[i]] = {phe::FromHex(g[i].get<std::string>())};
      enc_h_[ids[i]] = {phe::FromHex(h[i].get<std::string>())};
    }
    node_bounds_.clear();
  }

  void OnSampleSpace(int64_t round) {
    json p = Get(bus_.Receive(id_, roster_.active_id, msg::kSampleSpace, round));
    json nodes = json::array();
    const size_t nf = data_.num_features();
    const size_t grid = nf * static_cast<size_t>(max_bin_);
    for (const auto& n : p.at("nodes")) {
      const int node = n.at("node").get<int>();
      std::vector<size_t> rows;
      std::vector<int64_t> ids = n.at("ids").get<std::vector<int64_t>>();
      for (int64_t id : ids) rows.push_back(Row(id));
      std::vector<gbt::BinBoundaries> bounds =
          per_node_ ? BinsOver(data_, rows, max_bin_) : global_bounds_;
      std::vector<mpz_class> g(grid, 1), h(grid, 1);
      std::vector<int64_t> count(grid, 0);
      for (size_t k = 0; k < rows.size(); ++k) {
        auto eg = enc_g_.find(ids[k]);
        auto eh = enc_h_.find(ids[k]);
        if (eg == enc_g_.end() || eh == enc_h_.end()) {
          throw ProtocolError(id_ + ": no gradient for sample " + std::to_string(ids[k]));
        }
        for (size_t c = 0; c < nf; ++c) {
          const size_t slot = c * max_bin_ + bounds[c].Bin(data_.x.at(rows[k], c));
          g[slot] = g[slot] * eg->second.value % pk_.n_squared;
          h[slot] = h[slot] * eh->second.value % pk_.n_squared;
          ++count[slot];
        }
      }
      json gj = json::array(), hj = json::array();
      for (size_t s = 0; s < grid; ++s) {
        gj.push_back(phe::ToHex(g[s]));
        hj.push_back(phe::ToHex(h[s]));
      }
      nodes.push_back({{"node", node}, {"count", count}, {"g", gj}, {"h", hj}});
      node_bounds_[node] = std::move(bounds);
    }
    std::vector<int> fids;
    for (size_t c = 0; c < nf; ++c) fids.push_back(data_.GlobalFeatureId(c));
    bus_.Send(id_, roster_.active_id, round, msg::kEncHistogramSubmit,
              {{"tree", tree_}, {"feature_ids", fids}, {"nodes", nodes}});
  }

  void OnSplitNotice(int64_t round) {
    json p = Get(bus_.Receive(id_, roster_.active_id, msg::kSplitNotice, round));
    json replies = json::array();
    for (const auto& s : p.at("splits")) {
      const int node = s.at("node").get<int>();
      const int fid = s.at("feature_id").get<int>();
      const int bin = s.at("bin").get<int>();
      auto col = column_of_.find(fid);
      // Global bins cover nodes whose histogram came from sibling subtraction.
      const std::vector<gbt::BinBoundaries>* bounds = per_node_ ? nullptr : &global_bounds_;
      if (auto nb = node_bounds_.find(node); nb != node_bounds_.end()) bounds = &nb->second;
      if (col == column_of_.end() || bounds == nullptr) {
        throw ProtocolError(id_ + ": split notice for unknown node or feature");
      }
      const double threshold = bounds->at(col->second).threshold(bin);
      SplitRecordEntry entry{static_cast<int>(table_.size()), tree_, node, fid, bin, threshold};
      table_.push_back(entry);
      if (options_.record_secrets) secrets_.feature_values.push_back(threshold);
      std::vector<int64_t> left;
      for (const auto& idj : s.at("ids")) {
        const int64_t id = idj.get<int64_t>();
        if (data_.x.at(Row(id), col->second) <= threshold) left.push_back(id);
      }
      replies.push_back({{"node", node}, {"record_id", entry.record_id}, {"left", left}});
    }
    bus_.Send(id_, roster_.active_id, round, msg::kPartitionReply,
              {{"tree", tree_}, {"splits", replies}});
  }

  void LoadTable(const std::vector<SplitRecordEntry>& table) { table_ = table; }

  void OnInferQuery(int64_t round) {
    json p = Get(bus_.Receive(id_, roster_.active_id, msg::kInferQuery, round));
    json answers = json::array();
    for (const auto& q : p.at("queries")) {
      const int record = q.at("record_id").get<int>();
      if (record < 0 || record >= static_cast<int>(table_.size())) {
        throw ProtocolError(id_ + ": unknown record id " + std::to_string(record));
      }
      const SplitRecordEntry& e = table_[record];
      auto col = column_of_.find(e.feature_id);
      if (col == column_of_.end()) throw ProtocolError(id_ + ": record of a foreign feature");
      const size_t r = Row(q.at("sample_id").get<int64_t>());
      answers.push_back(data_.x.at(r, col->second) <= e.threshold);
    }
    bus_.Send(id_, roster_.active_id, round, msg::kInferReply, {{"left", answers}});
  }

  const std::vector<SplitRecordEntry>& table() const { return table_; }
  const orchestrator::PartySecrets& secrets() const { return secrets_; }

 private:
  size_t Row(int64_t id) const {
    auto it = rows_.find(id);
    if (it == rows_.end()) throw ProtocolError(id_ + ": unknown sample id " + std::to_string(id));
    return it->second;
  }

  MessageBus& bus_;
  const VflRoster& roster_;
  int index_;
  std::string id_;
  const data::PartyDataset& data_;
  const VflOptions& options_;
  std::unordered_map<int64_t, size_t> rows_;
  std::map<int, size_t> column_of_;
  phe::PublicKey pk_;
  int max_bin_ = 0;
  bool per_node_ = true;
  std::vector<gbt::BinBoundaries> global_bounds_;
  int tree_ = -1;
  std::unordered_map<int64_t, phe::Ciphertext> enc_g_, enc_h_;
  std::map<int, std::vector<gbt::BinBoundaries>> node_bounds_;
  std::vector<SplitRecordEntry> table_;
  orchestrator::PartySecrets secrets_;
};

class VflActive : public gbt::HistogramBackend {
 public:
  VflActive(MessageBus& bus, const VflRoster& roster, const data::PartyDataset& data,
            std::vector<VflPassive>& passives, const gbt::GbtParams& params,
            const VflOptions& options, std::vector<double>& margins)
      : bus_(bus),
        roster_(roster),
        data_(data),
        passives_(passives),
        params_(params),
        options_(options),
        margins_(margins) {
    for (size_t c = 0; c < data.num_features(); ++c) {
      own_ids_.push_back(data.GlobalFeatureId(c));
      owner_of_[data.GlobalFeatureId(c)] = 0;
      column_of_[data.GlobalFeatureId(c)] = c;
    }
    secrets_.party = roster.active_id;
    if (options.record_secrets) {
      secrets_.feature_values = data.x.values();
      secrets_.label_vectors.push_back(*data.labels);
    }
  }

  void Setup() {
    if (options_.key.has_value()) {
      key_ = *options_.key;
    } else {
      phe::KeyGenOptions ko;
      ko.key_bits = options_.key_bits;
      ko.seed = DeriveSeed(options_.train.seed, {0x6b6579});
      key_ = phe::GenerateKeyPair(ko);
    }
    if (key_.public_key.bits() < 130) {
      throw ConfigError("VFL needs a key of at least 130 bits to carry 64-bit sums");
    }
    encryptor_ = std::make_unique<phe::Encryptor>(key_.public_key,
                                                  DeriveSeed(options_.train.seed, {0x656e63}));
    codec_ = std::make_unique<phe::FixedPointCodec>(key_.public_key);
    per_node_ = options_.train.binning == gbt::BinningScope::kPerNode;
    if (!per_node_) global_bounds_ = BinsOver(data_, AllRows(data_), params_.max_bin);
    const int64_t round = bus_.NextRound();
    for (const auto& p : roster_.passive_ids) {
      bus_.Send(roster_.active_id, p, round, msg::kKeyBroadcast,
                {{"n", phe::ToHex(key_.public_key.n)},
                 {"g", phe::ToHex(key_.public_key.g)},
                 {"max_bin", params_.max_bin},
                 {"binning", gbt::ToString(options_.train.binning)}});
    }
    for (auto& p : passives_) p.OnKey(round);
  }

  void StartTree(int tree) {
    tree_ = tree;
    const auto& labels = *data_.labels;
    const size_t n = data_.num_samples();
    std::vector<gbt::GradPair> g(n);
    for (size_t r = 0; r < n; ++r) g[r] = gbt::LogisticGradients(labels[r], margins_[r]);
    grads_ = gbt::Quantize(g);
    in_bag_.assign(n, 0);
    json ids = json::array(), gj = json::array(), hj = json::array();
    for (size_t r = 0; r < n; ++r) {
      in_bag_[r] = gbt::InBag(options_.train.seed, tree, data_.sample_ids[r], params_.subsample);
      if (!in_bag_[r]) continue;
      if (options_.record_secrets) {
        secrets_.secret_integers.push_back(grads_[r].g);
        secrets_.secret_integers.push_back(grads_[r].h);
      }
      if (passives_.empty()) continue;
      ids.push_back(data_.sample_ids[r]);
      gj.push_back(phe::ToHex(encryptor_->Encrypt(codec_->EncodeInteger(grads_[r].g)).value));
      hj.push_back(phe::ToHex(encryptor_->Encrypt(codec_->EncodeInteger(grads_[r].h)).value));
    }
    node_rows_.clear();
    node_bounds_.clear();
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    node_rows_[0] = std::move(all);
    if (passives_.empty()) return;
    const int64_t round = bus_.NextRound();
    json payload = {{"tree", tree}, {"ids", ids}, {"g", gj}, {"h", hj}};
    for (const auto& p : roster_.passive_ids) {
      bus_.Send(roster_.active_id, p, round, msg::kGradientBroadcast, payload);
    }
    for (auto& p : passives_) p.OnGradients(round);
  }

  std::vector<gbt::GradHistogram> Histograms(std::span<const int> node_ids) override {
    std::vector<gbt::GradHistogram> out;
    json nodes = json::array();
    for (int id : node_ids) {
      std::vector<int> rows;
      for (int r : node_rows_.at(id)) {
        if (in_bag_[r]) rows.push_back(r);
      }
      out.push_back(OwnHistogram(id, rows));
      json ids = json::array();
      for (int r : rows) ids.push_back(data_.sample_ids[r]);
      nodes.push_back({{"node", id}, {"ids", ids}});
    }
    if (passives_.empty()) return out;
    const int64_t round = bus_.NextRound();
    for (const auto& p : roster_.passive_ids) {
      bus_.Send(roster_.active_id, p, round, msg::kSampleSpace, {{"tree", tree_}, {"nodes", nodes}});
    }
    for (auto& p : passives_) p.OnSampleSpace(round);
    for (size_t k = 0; k < roster_.passive_ids.size(); ++k) {
      json p = Get(bus_.Receive(roster_.active_id, roster_.passive_ids[k],
                                msg::kEncHistogramSubmit, round));
      const auto fids = p.at("feature_ids").get<std::vector<int>>();
      for (int f : fids) {
        auto [it, inserted] = owner_of_.emplace(f, static_cast<int>(k + 1));
        if (!inserted && it->second != static_cast<int>(k + 1)) {
          throw ProtocolError("feature " + std::to_string(f) + " claimed by two parties");
        }
      }
      const auto& got = p.at("nodes");
      if (got.size() != node_ids.size()) {
        throw ProtocolError("ENC_HISTOGRAM_SUBMIT from " + roster_.passive_ids[k] +
                            " has the wrong number of nodes");
      }
      const size_t grid = fids.size() * static_cast<size_t>(params_.max_bin);
      for (size_t i = 0; i < node_ids.size(); ++i) {
        const auto& n = got[i];
        if (n.at("node").get<int>() != node_ids[i]) {
          throw ProtocolError("ENC_HISTOGRAM_SUBMIT lists nodes out of order");
        }
        const auto counts = n.at("count").get<std::vector<int64_t>>();
        const auto& g = n.at("g");
        const auto& h = n.at("h");
        if (counts.size() != grid || g.size() != grid || h.size() != grid) {
          throw ProtocolError("ENC_HISTOGRAM_SUBMIT slot count mismatch");
        }
        gbt::GradHistogram part(fids, params_.max_bin);
        auto slots = part.mutable_slots();
        for (size_t s = 0; s < grid; ++s) {
          slots[s].count = counts[s];
          if (counts[s] == 0) continue;
          slots[s].g = DecryptInt(g[s]);
          slots[s].h = DecryptInt(h[s]);
        }
        out[i].AppendFeatures(part);
      }
    }
    return out;
  }

  std::vector<gbt::SplitRecord> ApplySplits(std::span<const gbt::NodeSplit> splits) override {
    std::vector<gbt::SplitRecord> records(splits.size());
    std::map<int, json> notices;  // owner -> splits
    std::map<int, std::vector<size_t>> by_owner;
    for (size_t i = 0; i < splits.size(); ++i) {
      const auto& s = splits[i];
      const int fid = s.candidate.feature_id;
      auto own = owner_of_.find(fid);
      if (own == owner_of_.end()) throw ProtocolError("split on an unowned feature");
      if (own->second == 0) {
        const size_t c = column_of_.at(fid);
        const double threshold = Bounds(s.node_id).at(c).threshold(s.candidate.bin);
        std::vector<int> left, right;
        for (int r : node_rows_.at(s.node_id)) {
          (data_.x.at(r, c) <= threshold ? left : right).push_back(r);
        }
        Assign(s, std::move(left), std::move(right));
        records[i] = {threshold, 0, -1};
        continue;
      }
      json ids = json::array();
      for (int r : node_rows_.at(s.node_id)) ids.push_back(data_.sample_ids[r]);
      notices[own->second].push_back(
          {{"node", s.node_id}, {"feature_id", fid}, {"bin", s.candidate.bin}, {"ids", ids}});
      by_owner[own->second].push_back(i);
    }
    if (notices.empty()) return records;
    const int64_t round = bus_.NextRound();
    for (const auto& [owner, list] : notices) {
      bus_.Send(roster_.active_id, roster_.party(owner), round, msg::kSplitNotice,
                {{"tree", tree_}, {"splits", list}});
    }
    for (const auto& [owner, list] : notices) passives_[owner - 1].OnSplitNotice(round);
    for (const auto& [owner, idx] : by_owner) {
      json p = Get(bus_.Receive(roster_.active_id, roster_.party(owner), msg::kPartitionReply,
                                round));
      const auto& replies = p.at("splits");
      if (replies.size() != idx.size()) throw ProtocolError("PARTITION_REPLY size mismatch");
      for (size_t k = 0; k < idx.size(); ++k) {
        const auto& s = splits[idx[k]];
        const auto& rep = replies[k];
        if (rep.at("node").get<int>() != s.node_id) {
          throw ProtocolError("PARTITION_REPLY lists nodes out of order");
        }
        std::set<int64_t> left_ids;
        for (const auto& v : rep.at("left")) left_ids.insert(v.get<int64_t>());
        std::vector<int> left, right;
        for (int r : node_rows_.at(s.node_id)) {
          (left_ids.count(data_.sample_ids[r]) ? left : right).push_back(r);
        }
        if (left.size() != left_ids.size()) {
          throw ProtocolError("PARTITION_REPLY names samples outside the node");
        }
        Assign(s, std::move(left), std::move(right));
        records[idx[k]] = {std::numeric_limits<double>::quiet_NaN(), owner,
                           rep.at("record_id").get<int>()};
      }
    }
    return records;
  }

  void FinishTree(const gbt::RegressionTree& tree) override {
    for (const auto& node : tree.nodes) {
      if (!node.is_leaf) continue;
      auto it = node_rows_.find(node.id);
      if (it == node_rows_.end()) continue;
      for (int r : it->second) margins_[r] += params_.learning_rate * node.weight;
    }
  }

  const orchestrator::PartySecrets& secrets() const { return secrets_; }

 private:
  int64_t DecryptInt(const json& hex) const {
    return codec_->DecodeInteger(
        phe::Decrypt(key_.private_key, key_.public_key, {phe::FromHex(hex.get<std::string>())}));
  }

  const std::vector<gbt::BinBoundaries>& Bounds(int node) const {
    return per_node_ ? node_bounds_.at(node) : global_bounds_;
  }

  gbt::GradHistogram OwnHistogram(int node, const std::vector<int>& rows) {
    std::vector<size_t> urows(rows.begin(), rows.end());
    if (per_node_) node_bounds_[node] = BinsOver(data_, urows, params_.max_bin);
    const auto& bounds = Bounds(node);
    const int nf = static_cast<int>(data_.num_features());
    gbt::BinnedRows binned;
    binned.num_features = nf;
    std::vector<gbt::QuantizedGrad> grads;
    for (int r : rows) {
      for (int c = 0; c < nf; ++c) binned.bins.push_back(bounds[c].Bin(data_.x.at(r, c)));
      grads.push_back(grads_[r]);
    }
    std::vector<int> local(rows.size());
    std::iota(local.begin(), local.end(), 0);
    return gbt::BuildHistogram(binned, grads, local, own_ids_, params_.max_bin);
  }

  void Assign(const gbt::NodeSplit& s, std::vector<int> left, std::vector<int> right) {
    int64_t nl = 0, nr = 0;
    for (int r : left) nl += in_bag_[r];
    for (int r : right) nr += in_bag_[r];
    if (nl != s.candidate.left.count || nr != s.candidate.right.count) {
      throw ProtocolError("partition of node " + std::to_string(s.node_id) +
                          " disagrees with its histogram counts");
    }
    node_rows_[s.left_id] = std::move(left);
    node_rows_[s.right_id] = std::move(right);
  }

  MessageBus& bus_;
  const VflRoster& roster_;
  const data::PartyDataset& data_;
  std::vector<VflPassive>& passives_;
  const gbt::GbtParams& params_;
  const VflOptions& options_;
  std::vector<double>& margins_;

  phe::KeyPair key_;
  std::unique_ptr<phe::Encryptor> encryptor_;
  std::unique_ptr<phe::FixedPointCodec> codec_;
  std::vector<int> own_ids_;
  std::map<int, int> owner_of_;
  std::map<int, size_t> column_of_;
  bool per_node_ = true;
  std::vector<gbt::BinBoundaries> global_bounds_;
  int tree_ = -1;
  std::vector<gbt::QuantizedGrad> grads_;
  std::vector<char> in_bag_;
  std::map<int, std::vector<int>> node_rows_;
  std::map<int, std::vector<gbt::BinBoundaries>> node_bounds_;
  orchestrator::PartySecrets secrets_;
};

void RegisterAll(MessageBus& bus, const VflRoster& roster) {
  for (int i = 0; i < roster.num_parties(); ++i) {
    if (!bus.IsRegistered(roster.party(i))) bus.Register(roster.party(i));
  }
}

void CheckAligned(const data::PartyDataset& active,
                  std::span<const data::PartyDataset> passives) {
  std::set<int> fids;
  for (size_t c = 0; c < active.num_features(); ++c) fids.insert(active.GlobalFeatureId(c));
  for (const auto& p : passives) {
    p.Validate();
    if (p.sample_ids != active.sample_ids) {
      throw DataError("VFL party " + p.party_id + " is not aligned with the active party");
    }
    for (size_t c = 0; c < p.num_features(); ++c) {
      if (!fids.insert(p.GlobalFeatureId(c)).second) {
        throw DataError("feature id " + std::to_string(p.GlobalFeatureId(c)) +
                        " is held by two VFL parties");
      }
    }
  }
}

}  // namespace

VflRoster DefaultVflRoster(std::span<const data::PartyDataset> parties) {
  VflRoster r;
  if (parties.empty()) throw ConfigError("VFL needs at least the active party");
  r.active_id = parties[0].party_id;
  for (size_t i = 1; i < parties.size(); ++i) r.passive_ids.push_back(parties[i].party_id);
  return r;
}

VflResult VflTrain(MessageBus& bus, const VflRoster& roster, const data::PartyDataset& active,
                   std::span<const data::PartyDataset> passives, const gbt::GbtParams& params,
                   const VflOptions& options) {
  params.Validate();
  active.Validate();
  if (!active.has_labels()) throw DataError("the active VFL party must hold labels");
  if (passives.size() != roster.passive_ids.size()) {
    throw ConfigError("one dataset per passive VFL party required");
  }
  CheckAligned(active, passives);
  RegisterAll(bus, roster);

  std::vector<VflPassive> passive_actors;
  passive_actors.reserve(passives.size());
  for (size_t k = 0; k < passives.size(); ++k) {
    passive_actors.emplace_back(bus, roster, static_cast<int>(k + 1), passives[k], options);
  }
  VflResult result;
  auto& model = result.model.skeleton;
  model.params = params;
  model.base_score_logit = gbt::InitialLogit(params, options.train);
  int max_fid = -1;
  for (size_t c = 0; c < active.num_features(); ++c) {
    max_fid = std::max(max_fid, active.GlobalFeatureId(c));
  }
  for (const auto& p : passives) {
    for (size_t c = 0; c < p.num_features(); ++c) max_fid = std::max(max_fid, p.GlobalFeatureId(c));
  }
  model.num_features = max_fid + 1;

  std::vector<double> margins(active.num_samples(), model.base_score_logit);
  VflActive active_actor(bus, roster, active, passive_actors, params, options, margins);
  active_actor.Setup();
  const gbt::GrowOptions grow{options.train.binning == gbt::BinningScope::kGlobal};
  for (int t = 0; t < params.n_estimators; ++t) {
    active_actor.StartTree(t);
    model.trees.push_back(gbt::GrowTree(params, active_actor, grow));
  }
  for (const auto& p : passive_actors) result.model.passive_tables.push_back(p.table());
  if (options.record_secrets) {
    result.secrets.push_back(active_actor.secrets());
    for (const auto& p : passive_actors) result.secrets.push_back(p.secrets());
  }
  return result;
}

std::vector<double> VflPredict(MessageBus& bus, const VflRoster& roster, const VflModel& model,
                               const data::PartyDataset& active_rows,
                               std::span<const data::PartyDataset> passive_rows) {
  if (passive_rows.size() != roster.passive_ids.size() ||
      model.passive_tables.size() != roster.passive_ids.size()) {
    throw ConfigError("VFL prediction needs every passive party's rows and table");
  }
  RegisterAll(bus, roster);
  VflOptions options;
  std::vector<VflPassive> passives;
  passives.reserve(passive_rows.size());
  for (size_t k = 0; k < passive_rows.size(); ++k) {
    passives.emplace_back(bus, roster, static_cast<int>(k + 1), passive_rows[k], options);
    passives.back().LoadTable(model.passive_tables[k]);
  }
  std::map<int, size_t> column_of;
  for (size_t c = 0; c < active_rows.num_features(); ++c) {
    column_of[active_rows.GlobalFeatureId(c)] = c;
  }
  const auto& ens = model.skeleton;
  const size_t n = active_rows.num_samples();
  std::vector<double> margins(n, ens.base_score_logit);
  for (const auto& tree : ens.trees) {
    std::vector<int> at(n, 0);
    std::vector<size_t> open(n);
    std::iota(open.begin(), open.end(), size_t{0});
    while (!open.empty()) {
      std::map<int, std::vector<size_t>> queries;  // owner -> rows
      std::vector<size_t> still;
      for (size_t r : open) {
        const gbt::TreeNode& node = tree.nodes.at(at[r]);
        if (node.is_leaf) continue;
        if (node.owner_party == 0) {
          auto c = column_of.find(node.feature_id);
          if (c == column_of.end()) {
            throw ProtocolError("active party lacks feature " + std::to_string(node.feature_id));
          }
          at[r] = active_rows.x.at(r, c->second) <= node.threshold ? node.left : node.right;
          still.push_back(r);
          continue;
        }
        queries[node.owner_party].push_back(r);
      }
      if (!queries.empty()) {
        const int64_t round = bus.NextRound();
        for (const auto& [owner, rows] : queries) {
          if (owner < 1 || owner > static_cast<int>(passives.size())) {
            throw ProtocolError("node owned by unknown party " + std::to_string(owner));
          }
          json list = json::array();
          for (size_t r : rows) {
            list.push_back({{"record_id", tree.nodes[at[r]].record_id},
                            {"sample_id", active_rows.sample_ids[r]}});
          }
          bus.Send(roster.active_id, roster.party(owner), round, msg::kInferQuery,
                   {{"queries", list}});
        }
        for (const auto& [owner, rows] : queries) passives[owner - 1].OnInferQuery(round);
        for (const auto& [owner, rows] : queries) {
          json p = Get(bus.Receive(roster.active_id, roster.party(owner), msg::kInferReply, round));
          const auto& left = p.at("left");
          if (left.size() != rows.size()) throw ProtocolError("INFER_REPLY size mismatch");
          for (size_t k = 0; k < rows.size(); ++k) {
            const gbt::TreeNode& node = tree.nodes[at[rows[k]]];
            at[rows[k]] = left[k].get<bool>() ? node.left : node.right;
            still.push_back(rows[k]);
          }
        }
      }
      std::sort(still.begin(), still.end());
      open = std::move(still);
    }
    for (size_t r = 0; r < n; ++r) {
      margins[r] += ens.params.learning_rate * tree.nodes[at[r]].weight;
    }
  }
  std::vector<double> out(n);
  for (size_t r = 0; r < n; ++r) out[r] = gbt::Sigmoid(margins[r]);
  return out;
}

gbt::BoostedEnsemble ResolveThresholds(const VflModel& model) {
  gbt::BoostedEnsemble out = model.skeleton;
  for (const auto& table : model.passive_tables) {
    for (const auto& e : table) {
      out.trees.at(e.tree).nodes.at(e.node).threshold = e.threshold;
    }
  }
  return out;
}

json ToJson(const VflModel& m) {
  json tables = json::array();
  for (const auto& t : m.passive_tables) {
    json rows = json::array();
    for (const auto& e : t) {
      rows.push_back({{"record_id", e.record_id},
                      {"tree", e.tree},
                      {"node", e.node},
                      {"feature_id", e.feature_id},
                      {"bin", e.bin},
                      {"threshold", e.threshold}});
    }
    tables.push_back(rows);
  }
  return {{"skeleton", gbt::ToJson(m.skeleton)}, {"passive_tables", tables}};
}

VflModel VflModelFromJson(const json& j) {
  VflModel m;
  try {
    m.skeleton = gbt::EnsembleFromJson(j.at("skeleton"));
    for (const auto& t : j.at("passive_tables")) {
      std::vector<SplitRecordEntry> rows;
      for (const auto& e : t) {
        rows.push_back({e.at("record_id").get<int>(), e.at("tree").get<int>(),
                        e.at("node").get<int>(), e.at("feature_id").get<int>(),
                        e.at("bin").get<int>(), e.at("threshold").get<double>()});
      }
      m.passive_tables.push_back(std::move(rows));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed VFL model: ") + e.what());
  }
  return m;
}

}  // namespace fedxgb::fed
