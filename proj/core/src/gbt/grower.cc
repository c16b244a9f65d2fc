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

#include "fedxgb/gbt/grower.h"

#include <array>
#include <map>
#include <string>

#include "fedxgb/common/errors.h"

namespace fedxgb::gbt {
namespace {

double SafeLeafWeight(const HistSlot& totals, const GbtParams& params) {
  if (totals.H() + params.reg_lambda == 0.0) return 0.0;
  return LeafWeight(totals.G(), totals.H(), params.reg_lambda, params.reg_alpha);
}

}  // namespace

RegressionTree GrowTree(const GbtParams& params, HistogramBackend& backend,
                        const GrowOptions& options) {
  RegressionTree tree;
  tree.nodes.push_back(TreeNode{});

  std::map<int, HistSlot> totals;
  std::map<int, GradHistogram> hists;
  {
    const int root = 0;
    auto got = backend.Histograms(std::span<const int>(&root, 1));
    if (got.size() != 1) throw ProtocolError("backend returned no root histogram");
    totals[0] = got[0].total();
    hists[0] = std::move(got[0]);
  }

  std::vector<int> level = {0};
  for (int depth = 0; !level.empty(); ++depth) {
    std::vector<NodeSplit> splits;
    std::vector<int> next;
    for (int id : level) {
      const HistSlot t = totals.at(id);
      const bool splittable = depth < params.max_depth && t.count >= 2;
      std::optional<SplitCandidate> cand;
      if (splittable) cand = FindBestSplit(hists.at(id), params);
      if (!cand.has_value()) {
        TreeNode& node = tree.nodes[id];
        node.is_leaf = true;
        node.weight = SafeLeafWeight(t, params);
        continue;
      }
      const int left = static_cast<int>(tree.nodes.size());
      const int right = left + 1;
      TreeNode ln, rn;
      ln.id = left;
      rn.id = right;
      ln.depth = rn.depth = depth + 1;
      tree.nodes.push_back(ln);
      tree.nodes.push_back(rn);

      TreeNode& node = tree.nodes[id];
      node.is_leaf = false;
      node.feature_id = cand->feature_id;
      node.bin = cand->bin;
      node.left = left;
      node.right = right;
      totals[left] = cand->left;
      totals[right] = cand->right;
      splits.push_back(NodeSplit{id, *cand, left, right});
      next.push_back(left);
      next.push_back(right);
    }

    if (!splits.empty()) {
      auto records = backend.ApplySplits(splits);
      if (records.size() != splits.size()) {
        throw ProtocolError("backend returned " + std::to_string(records.size()) +
                            " split records for " +
                            std::to_string(splits.size()) + " splits");
      }
      for (size_t i = 0; i < splits.size(); ++i) {
        TreeNode& node = tree.nodes[splits[i].node_id];
        node.threshold = records[i].threshold;
        node.owner_party = records[i].owner_party;
        node.record_id = records[i].record_id;
      }
    }

    // Histograms for the children that may split at the next depth.
    auto needs_hist = [&](int id) {
      return depth + 1 < params.max_depth && totals.at(id).count >= 2;
    };
    std::vector<int> requested;
    // (derived child, requested sibling, parent)
    std::vector<std::array<int, 3>> derived;
    for (const NodeSplit& s : splits) {
      const bool need_l = needs_hist(s.left_id);
      const bool need_r = needs_hist(s.right_id);
      if (options.sibling_subtraction && need_l && need_r) {
        const bool left_smaller =
            totals.at(s.left_id).count <= totals.at(s.right_id).count;
        const int small = left_smaller ? s.left_id : s.right_id;
        const int large = left_smaller ? s.right_id : s.left_id;
        requested.push_back(small);
        derived.push_back({large, small, s.node_id});
      } else {
        if (need_l) requested.push_back(s.left_id);
        if (need_r) requested.push_back(s.right_id);
      }
    }

    std::map<int, GradHistogram> next_hists;
    if (!requested.empty()) {
      auto got = backend.Histograms(requested);
      if (got.size() != requested.size()) {
        throw ProtocolError("backend returned the wrong number of histograms");
      }
      for (size_t i = 0; i < requested.size(); ++i) {
        next_hists[requested[i]] = std::move(got[i]);
      }
      for (const auto& [large, small, parent] : derived) {
        next_hists[large] =
            SiblingBySubtraction(hists.at(parent), next_hists.at(small));
      }
    }
    hists = std::move(next_hists);
    level = std::move(next);
  }

  backend.FinishTree(tree);
  return tree;
}

}  // namespace fedxgb::gbt
