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

#include "fedxgb/gbt/tree.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/rng.h"
#include "fedxgb/gbt/gradients.h"

namespace fedxgb::gbt {
namespace {

constexpr const char* kFormat = "fedxgb-ensemble";
constexpr int kVersion = 1;

bool SameDouble(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

}  // namespace

bool TreeNode::operator==(const TreeNode& o) const {
  return id == o.id && depth == o.depth && is_leaf == o.is_leaf &&
         SameDouble(weight, o.weight) && feature_id == o.feature_id &&
         bin == o.bin && SameDouble(threshold, o.threshold) &&
         owner_party == o.owner_party && record_id == o.record_id &&
         left == o.left && right == o.right;
}

const TreeNode& RegressionTree::Leaf(std::span<const double> row) const {
  const TreeNode* node = &nodes.at(0);
  while (!node->is_leaf) {
    if (node->feature_id < 0 ||
        static_cast<size_t>(node->feature_id) >= row.size()) {
      throw DataError("row does not contain feature " +
                      std::to_string(node->feature_id));
    }
    if (std::isnan(node->threshold)) {
      throw ConsistencyError("node " + std::to_string(node->id) +
                             " has no local threshold");
    }
    const double x = row[node->feature_id];
    node = &nodes.at(x <= node->threshold ? node->left : node->right);
  }
  return *node;
}

int RegressionTree::Depth() const {
  int d = 0;
  for (const TreeNode& n : nodes) d = std::max(d, n.depth);
  return d;
}

int RegressionTree::NumLeaves() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(),
                                        [](const TreeNode& n) { return n.is_leaf; }));
}

double PredictMargin(const BoostedEnsemble& model, std::span<const double> row) {
  double margin = model.base_score_logit;
  for (const RegressionTree& tree : model.trees) {
    margin += model.params.learning_rate * tree.Leaf(row).weight;
  }
  return margin;
}

Prediction Predict(const BoostedEnsemble& model, std::span<const double> row) {
  Prediction p;
  p.margin = PredictMargin(model, row);
  p.probability = Sigmoid(p.margin);
  p.label = p.probability >= 0.5 ? 1 : 0;
  return p;
}

nlohmann::json ToJson(const BoostedEnsemble& model) {
  nlohmann::json trees = nlohmann::json::array();
  for (const RegressionTree& tree : model.trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& n : tree.nodes) {
      nlohmann::json jn = {{"id", n.id}, {"depth", n.depth}, {"leaf", n.is_leaf}};
      if (n.is_leaf) {
        jn["weight"] = n.weight;
      } else {
        jn["feature"] = n.feature_id;
        jn["bin"] = n.bin;
        jn["threshold"] = std::isnan(n.threshold) ? nlohmann::json(nullptr)
                                                  : nlohmann::json(n.threshold);
        jn["owner"] = n.owner_party;
        jn["record"] = n.record_id;
        jn["left"] = n.left;
        jn["right"] = n.right;
      }
      nodes.push_back(std::move(jn));
    }
    trees.push_back({{"nodes", std::move(nodes)}});
  }
  return {{"format", kFormat},
          {"version", kVersion},
          {"num_features", model.num_features},
          {"base_score_logit", model.base_score_logit},
          {"params", model.params},
          {"trees", std::move(trees)}};
}

BoostedEnsemble EnsembleFromJson(const nlohmann::json& j) {
  if (j.value("format", std::string()) != kFormat) {
    throw DataError("not a fedxgb ensemble document");
  }
  if (j.at("version").get<int>() != kVersion) {
    throw DataError("unsupported ensemble version " +
                    std::to_string(j.at("version").get<int>()));
  }
  BoostedEnsemble m;
  m.num_features = j.at("num_features").get<int>();
  m.base_score_logit = j.at("base_score_logit").get<double>();
  m.params = j.at("params").get<GbtParams>();
  for (const auto& jt : j.at("trees")) {
    RegressionTree tree;
    for (const auto& jn : jt.at("nodes")) {
      TreeNode n;
      n.id = jn.at("id").get<int>();
      n.depth = jn.at("depth").get<int>();
      n.is_leaf = jn.at("leaf").get<bool>();
      if (n.is_leaf) {
        n.weight = jn.at("weight").get<double>();
      } else {
        n.feature_id = jn.at("feature").get<int>();
        n.bin = jn.at("bin").get<int>();
        if (!jn.at("threshold").is_null()) {
          n.threshold = jn.at("threshold").get<double>();
        }
        n.owner_party = jn.at("owner").get<int>();
        n.record_id = jn.at("record").get<int>();
        n.left = jn.at("left").get<int>();
        n.right = jn.at("right").get<int>();
      }
      if (n.id != static_cast<int>(tree.nodes.size())) {
        throw DataError("ensemble document: node ids must be consecutive");
      }
      tree.nodes.push_back(n);
    }
    m.trees.push_back(std::move(tree));
  }
  return m;
}

std::string SerializeEnsemble(const BoostedEnsemble& model) {
  return ToJson(model).dump(1);
}

BoostedEnsemble ParseEnsemble(const std::string& text) {
  return EnsembleFromJson(nlohmann::json::parse(text));
}

std::string ModelHash(const BoostedEnsemble& model) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(
                    Fnv1a64(ToJson(model).dump())));
  return buf;
}

}  // namespace fedxgb::gbt
