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

#ifndef FEDXGB_GBT_TREE_H_
#define FEDXGB_GBT_TREE_H_

#include <limits>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fedxgb/gbt/params.h"

namespace fedxgb::gbt {

struct TreeNode {
  int id = 0;
  int depth = 0;
  bool is_leaf = true;
  double weight = 0.0;  // leaf only

  // Internal nodes only. `threshold` is NaN when the split details live at
  // another party (feature-partitioned models); such nodes are resolved
  // through that party's lookup table using `record_id`.
  int feature_id = -1;
  int bin = -1;
  double threshold = std::numeric_limits<double>::quiet_NaN();
  int owner_party = 0;
  int record_id = -1;
  int left = -1;
  int right = -1;

  bool operator==(const TreeNode& o) const;
};

// Binary tree stored as a node array; node ids equal array positions and
// the root is node 0.
struct RegressionTree {
  std::vector<TreeNode> nodes;

  // Leaf reached by `row` (x <= threshold goes left).
  const TreeNode& Leaf(std::span<const double> row) const;
  int Depth() const;
  int NumLeaves() const;
  bool operator==(const RegressionTree&) const = default;
};

struct BoostedEnsemble {
  GbtParams params;
  double base_score_logit = 0.0;
  int num_features = 0;
  std::vector<RegressionTree> trees;

  bool operator==(const BoostedEnsemble&) const = default;
};

struct Prediction {
  double margin = 0.0;
  double probability = 0.5;
  int label = 1;
};

// margin = base + sum_t learning_rate * f_t(row). Throws DataError if the row
// is shorter than a referenced feature, ConsistencyError if a traversed node
// has no local threshold.
Prediction Predict(const BoostedEnsemble& model, std::span<const double> row);

// Same accumulation order as training, so margins are bit-identical to the
// training-time margins for the same trees.
double PredictMargin(const BoostedEnsemble& model, std::span<const double> row);

// Versioned tree-list document:
//   {"format": "fedxgb-ensemble", "version": 1, "num_features": F,
//    "base_score_logit": b, "params": {...},
//    "trees": [{"nodes": [{"id", "depth", "leaf", "weight"} |
//                         {"id", "depth", "leaf", "feature", "bin",
//                          "threshold" (null if remote), "owner", "record",
//                          "left", "right"}, ...]}, ...]}
nlohmann::json ToJson(const BoostedEnsemble& model);
BoostedEnsemble EnsembleFromJson(const nlohmann::json& j);

std::string SerializeEnsemble(const BoostedEnsemble& model);
BoostedEnsemble ParseEnsemble(const std::string& text);

// 16 hex digits of FNV-1a over the serialized document.
std::string ModelHash(const BoostedEnsemble& model);

}  // namespace fedxgb::gbt

#endif  // FEDXGB_GBT_TREE_H_
