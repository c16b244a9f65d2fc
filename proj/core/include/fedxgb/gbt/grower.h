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

#ifndef FEDXGB_GBT_GROWER_H_
#define FEDXGB_GBT_GROWER_H_

#include <span>
#include <vector>

#include "fedxgb/gbt/histogram.h"
#include "fedxgb/gbt/params.h"
#include "fedxgb/gbt/split.h"
#include "fedxgb/gbt/tree.h"

namespace fedxgb::gbt {

struct NodeSplit {
  int node_id = 0;
  SplitCandidate candidate;
  int left_id = 0;
  int right_id = 0;
};

// Where the split details of an applied split are stored.
struct SplitRecord {
  double threshold = std::numeric_limits<double>::quiet_NaN();
  int owner_party = 0;
  int record_id = -1;
};

// Supplies node histograms and applies split decisions. Centralized training
// implements it over a local matrix; the federated protocols implement it by
// exchanging messages with the other parties.
class HistogramBackend {
 public:
  virtual ~HistogramBackend() = default;

  // Histograms of the listed nodes (all at the same depth), in order.
  virtual std::vector<GradHistogram> Histograms(std::span<const int> node_ids) = 0;

  // Partitions the samples of each split node into its children and returns
  // one record per split, in order.
  virtual std::vector<SplitRecord> ApplySplits(std::span<const NodeSplit> splits) = 0;

  // Called once the tree has its leaf weights.
  virtual void FinishTree(const RegressionTree& tree) = 0;
};

struct GrowOptions {
  // Derive the larger child's histogram as parent - smaller child instead of
  // requesting it. Only valid when bin boundaries do not change between a
  // parent and its children.
  bool sibling_subtraction = true;
};

// Grows one tree level by level. Nodes at a depth are processed in id order
// and children get consecutive ids, so every backend that returns the same
// histograms yields the same tree.
//
// A node becomes a leaf when it is at max_depth, holds fewer than 2 samples,
// or has no qualifying split. Leaf weights come from the node totals; a leaf
// with H + lambda == 0 gets weight 0.
RegressionTree GrowTree(const GbtParams& params, HistogramBackend& backend,
                        const GrowOptions& options);

}  // namespace fedxgb::gbt

#endif  // FEDXGB_GBT_GROWER_H_
