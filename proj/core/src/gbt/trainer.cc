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

#include "fedxgb/gbt/trainer.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/rng.h"
#include "fedxgb/gbt/binning.h"
#include "fedxgb/gbt/gradients.h"
#include "fedxgb/gbt/grower.h"
#include "fedxgb/gbt/histogram.h"

namespace fedxgb::gbt {
namespace {

// Grows trees over a local labeled matrix.
class LocalBackend : public HistogramBackend {
 public:
  LocalBackend(const data::PartyDataset& data, const GbtParams& params,
               const TrainOptions& options, std::vector<double>& margins)
      : data_(data), params_(params), options_(options), margins_(margins) {
    const int nf = static_cast<int>(data_.num_features());
    feature_ids_.resize(nf);
    std::iota(feature_ids_.begin(), feature_ids_.end(), 0);
    if (options_.binning == BinningScope::kGlobal) {
      global_bounds_.reserve(nf);
      for (int f = 0; f < nf; ++f) {
        global_bounds_.push_back(
            ComputeBins(data_.x.column(f), params_.max_bin, f));
      }
      global_binned_.num_features = nf;
      global_binned_.bins.resize(data_.num_samples() * nf);
      for (size_t r = 0; r < data_.num_samples(); ++r) {
        for (int f = 0; f < nf; ++f) {
          global_binned_.bins[r * nf + f] = global_bounds_[f].Bin(data_.x.at(r, f));
        }
      }
    }
  }

  void StartTree(int tree_index) {
    const auto& labels = *data_.labels;
    const size_t n = data_.num_samples();
    std::vector<GradPair> grads(n);
    for (size_t r = 0; r < n; ++r) grads[r] = LogisticGradients(labels[r], margins_[r]);
    grads_ = Quantize(grads);
    in_bag_.assign(n, 0);
    for (size_t r = 0; r < n; ++r) {
      in_bag_[r] = InBag(options_.seed, tree_index, data_.sample_ids[r],
                         params_.subsample);
    }
    node_rows_.clear();
    node_bounds_.clear();
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    node_rows_[0] = std::move(all);
  }

  std::vector<GradHistogram> Histograms(std::span<const int> node_ids) override {
    std::vector<GradHistogram> out;
    for (int id : node_ids) {
      std::vector<int> rows;
      for (int r : node_rows_.at(id)) {
        if (in_bag_[r]) rows.push_back(r);
      }
      if (options_.binning == BinningScope::kGlobal) {
        out.push_back(BuildHistogram(global_binned_, grads_, rows, feature_ids_,
                                     params_.max_bin));
        continue;
      }
      out.push_back(NodeLocalHistogram(id, rows));
    }
    return out;
  }

  std::vector<SplitRecord> ApplySplits(std::span<const NodeSplit> splits) override {
    std::vector<SplitRecord> records;
    for (const NodeSplit& s : splits) {
      const int f = s.candidate.feature_id;
      const double threshold =
          options_.binning == BinningScope::kGlobal
              ? global_bounds_[f].threshold(s.candidate.bin)
              : node_bounds_.at(s.node_id)[f].threshold(s.candidate.bin);
      std::vector<int> left, right;
      for (int r : node_rows_.at(s.node_id)) {
        (data_.x.at(r, f) <= threshold ? left : right).push_back(r);
      }
      node_rows_[s.left_id] = std::move(left);
      node_rows_[s.right_id] = std::move(right);
      records.push_back(SplitRecord{threshold, 0, -1});
    }
    return records;
  }

  void FinishTree(const RegressionTree& tree) override {
    for (const TreeNode& node : tree.nodes) {
      if (!node.is_leaf) continue;
      auto it = node_rows_.find(node.id);
      if (it == node_rows_.end()) continue;
      for (int r : it->second) margins_[r] += params_.learning_rate * node.weight;
    }
  }

 private:
  GradHistogram NodeLocalHistogram(int id, const std::vector<int>& rows) {
    const int nf = static_cast<int>(feature_ids_.size());
    std::vector<BinBoundaries> bounds;
    bounds.reserve(nf);
    for (int f = 0; f < nf; ++f) {
      if (rows.empty()) {
        bounds.push_back(BinsFromRange(0.0, 0.0, params_.max_bin, f));
        continue;
      }
      std::vector<double> col;
      col.reserve(rows.size());
      for (int r : rows) col.push_back(data_.x.at(r, f));
      bounds.push_back(ComputeBins(col, params_.max_bin, f));
    }
    BinnedRows binned;
    binned.num_features = nf;
    binned.bins.reserve(rows.size() * nf);
    std::vector<QuantizedGrad> grads;
    grads.reserve(rows.size());
    for (int r : rows) {
      for (int f = 0; f < nf; ++f) binned.bins.push_back(bounds[f].Bin(data_.x.at(r, f)));
      grads.push_back(grads_[r]);
    }
    std::vector<int> local(rows.size());
    std::iota(local.begin(), local.end(), 0);
    node_bounds_[id] = std::move(bounds);
    return BuildHistogram(binned, grads, local, feature_ids_, params_.max_bin);
  }

  const data::PartyDataset& data_;
  const GbtParams& params_;
  const TrainOptions& options_;
  std::vector<double>& margins_;

  std::vector<int> feature_ids_;
  std::vector<BinBoundaries> global_bounds_;
  BinnedRows global_binned_;

  std::vector<QuantizedGrad> grads_;
  std::vector<char> in_bag_;
  std::map<int, std::vector<int>> node_rows_;
  std::map<int, std::vector<BinBoundaries>> node_bounds_;
};

}  // namespace

bool InBag(uint64_t seed, int tree, int64_t sample_id, double subsample) {
  if (subsample >= 1.0) return true;
  return KeyedUniform(seed, {0x73756273ULL, static_cast<uint64_t>(tree),
                             static_cast<uint64_t>(sample_id)}) < subsample;
}

BoostedEnsemble TrainCentralized(const data::PartyDataset& data,
                                 const GbtParams& params,
                                 const TrainOptions& options) {
  params.Validate();
  if (!data.has_labels()) throw DataError("training data has no labels");
  if (data.num_samples() == 0) throw DataError("training data is empty");
  data.Validate();

  BoostedEnsemble model;
  model.params = params;
  model.base_score_logit = InitialLogit(params, options);
  model.num_features = static_cast<int>(data.num_features());

  std::vector<double> margins(data.num_samples(), model.base_score_logit);
  LocalBackend backend(data, params, options, margins);
  const GrowOptions grow{options.binning == BinningScope::kGlobal};
  for (int t = 0; t < params.n_estimators; ++t) {
    backend.StartTree(t);
    model.trees.push_back(GrowTree(params, backend, grow));
  }
  return model;
}

std::vector<double> PredictProbabilities(const BoostedEnsemble& model,
                                         const data::PartyDataset& data) {
  std::vector<double> out;
  out.reserve(data.num_samples());
  for (size_t r = 0; r < data.num_samples(); ++r) {
    out.push_back(Predict(model, data.x.row(r)).probability);
  }
  return out;
}

double MeanLogLoss(const BoostedEnsemble& model, const data::PartyDataset& data) {
  if (!data.has_labels() || data.num_samples() == 0) {
    throw DataError("log loss needs labeled, nonempty data");
  }
  double sum = 0.0;
  for (size_t r = 0; r < data.num_samples(); ++r) {
    sum += LogisticLoss((*data.labels)[r], PredictMargin(model, data.x.row(r)));
  }
  return sum / static_cast<double>(data.num_samples());
}

}  // namespace fedxgb::gbt
