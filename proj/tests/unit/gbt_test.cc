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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/fixed_point.h"
#include "fedxgb/gbt/binning.h"
#include "fedxgb/gbt/gradients.h"
#include "fedxgb/gbt/histogram.h"
#include "fedxgb/gbt/params.h"
#include "fedxgb/gbt/split.h"
#include "fedxgb/gbt/trainer.h"
#include "fedxgb/gbt/tree.h"
#include "fedxgb_testing/synthetic.h"

namespace fedxgb::gbt {
namespace {

TEST(Gradients, LogisticAtZeroMargin) {
  GradPair a = LogisticGradients(1, 0.0);
  EXPECT_DOUBLE_EQ(a.g, -0.5);
  EXPECT_DOUBLE_EQ(a.h, 0.25);
  GradPair b = LogisticGradients(0, 0.0);
  EXPECT_DOUBLE_EQ(b.g, 0.5);
  EXPECT_DOUBLE_EQ(b.h, 0.25);
  GradPair c = LogisticGradients(1, 40.0);
  EXPECT_NEAR(c.g, 0.0, 1e-12);
  EXPECT_NEAR(c.h, 0.0, 1e-12);
}

TEST(Params, Validation) {
  GbtParams p;
  EXPECT_NO_THROW(p.Validate());
  p.max_bin = 1;
  EXPECT_THROW(p.Validate(), ConfigError);
  p = GbtParams{};
  p.subsample = 0.0;
  EXPECT_THROW(p.Validate(), ConfigError);
  p = GbtParams{};
  p.learning_rate = 0.0;
  EXPECT_THROW(p.Validate(), ConfigError);
  nlohmann::json j = GbtParams{};
  EXPECT_EQ(j.get<GbtParams>(), GbtParams{});
}

TEST(Binning, EqualWidthThresholds) {
  std::vector<double> col = {0, 1, 2, 3};
  BinBoundaries b = ComputeBins(col, 2);
  ASSERT_EQ(b.thresholds().size(), 1u);
  EXPECT_DOUBLE_EQ(b.threshold(0), 1.5);
  BinBoundaries c = BinsFromRange(0, 10, 5);
  EXPECT_EQ(c.thresholds(), (std::vector<double>{2, 4, 6, 8}));
  EXPECT_EQ(c.Bin(2.0), 0);
  EXPECT_EQ(c.Bin(2.0001), 1);
  EXPECT_EQ(c.Bin(10.0), 4);
  std::vector<double> constant = {3, 3, 3};
  BinBoundaries k = ComputeBins(constant, 4);
  for (double v : constant) EXPECT_EQ(k.Bin(v), 0);
  EXPECT_THROW(ComputeBins(std::vector<double>{}, 4), DataError);
}

TEST(Binning, BinOrderMatchesThreshold) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  std::vector<double> col(200);
  for (auto& v : col) v = u(rng);
  BinBoundaries b = ComputeBins(col, 16);
  for (double x : col) {
    for (int t = 0; t + 1 < b.num_bins(); ++t) {
      EXPECT_EQ(b.Bin(x) <= t, x <= b.threshold(t));
    }
  }
}

TEST(Histogram, EmptyAndSingleSample) {
  BinnedRows binned{1, {3}};
  std::vector<QuantizedGrad> grads = {{QuantizeGrad(-0.5), QuantizeGrad(0.25)}};
  GradHistogram empty = BuildHistogram(binned, grads, std::vector<int>{}, {0}, 4);
  for (const auto& s : empty.slots()) EXPECT_EQ(s, HistSlot{});
  GradHistogram one = BuildHistogram(binned, grads, std::vector<int>{0}, {0}, 4);
  for (int b = 0; b < 4; ++b) {
    if (b == 3) {
      EXPECT_DOUBLE_EQ(one.at(0, b).G(), -0.5);
      EXPECT_DOUBLE_EQ(one.at(0, b).H(), 0.25);
      EXPECT_EQ(one.at(0, b).count, 1);
    } else {
      EXPECT_EQ(one.at(0, b), HistSlot{});
    }
  }
  EXPECT_EQ(one.total().count, 1);
}

TEST(Histogram, MatchesNaiveAccumulationAndSubtraction) {
  std::mt19937_64 rng(5);
  const int n = 300, nf = 3, nb = 8;
  BinnedRows binned{nf, {}};
  std::vector<QuantizedGrad> grads;
  std::uniform_int_distribution<int> bin(0, nb - 1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int r = 0; r < n; ++r) {
    for (int f = 0; f < nf; ++f) binned.bins.push_back(bin(rng));
    grads.push_back({QuantizeGrad(u(rng)), QuantizeGrad(std::fabs(u(rng)))});
  }
  std::vector<int> all(n), left;
  for (int r = 0; r < n; ++r) {
    all[r] = r;
    if (r % 3 == 0) left.push_back(r);
  }
  GradHistogram h = BuildHistogram(binned, grads, all, {0, 1, 2}, nb);
  for (int f = 0; f < nf; ++f) {
    for (int b = 0; b < nb; ++b) {
      int64_t g = 0, hh = 0, c = 0;
      for (int r = 0; r < n; ++r) {
        if (binned.bins[r * nf + f] != b) continue;
        g += grads[r].g;
        hh += grads[r].h;
        ++c;
      }
      EXPECT_EQ(h.at(f, b), (HistSlot{g, hh, c}));
    }
  }
  GradHistogram hl = BuildHistogram(binned, grads, left, {0, 1, 2}, nb);
  std::vector<int> right;
  for (int r = 0; r < n; ++r) {
    if (r % 3 != 0) right.push_back(r);
  }
  EXPECT_EQ(SiblingBySubtraction(h, hl), BuildHistogram(binned, grads, right, {0, 1, 2}, nb));
  EXPECT_THROW(SiblingBySubtraction(hl, h), ConsistencyError);
}

TEST(Split, GainAndWeightFormulas) {
  EXPECT_DOUBLE_EQ(SplitGain(2, 3, -2, 3, 1, 0), 1.0);
  EXPECT_DOUBLE_EQ(SplitGain(0, 0, 0, 0, 1, 0.7), -0.7);
  EXPECT_DOUBLE_EQ(SplitGain(1, 0, -1, 0, 0, 0), 0.0);  // empty-denominator terms drop
  EXPECT_DOUBLE_EQ(LeafWeight(2, 3, 1), -0.5);
  EXPECT_DOUBLE_EQ(LeafWeight(0, 5, 1), 0.0);
  EXPECT_THROW(LeafWeight(1, 0, 0), DegenerateNodeError);
  EXPECT_DOUBLE_EQ(ThresholdL1(0.3, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(ThresholdL1(-1.5, 0.5), -1.0);
}

TEST(Split, LeafWeightMinimizesObjective) {
  for (double alpha : {0.0, 0.3}) {
    const double g = 1.7, h = 2.3, lambda = 0.5;
    const double w = LeafWeight(g, h, lambda, alpha);
    const double best = LeafObjective(g, h, w, lambda, 0, alpha);
    for (double v = -3; v <= 3; v += 1e-3) {
      EXPECT_LE(best, LeafObjective(g, h, v, lambda, 0, alpha) + 1e-12);
    }
  }
}

TEST(Split, SeparableToySet) {
  // x = 0,1,2,3 with labels 0,0,1,1 at margin 0, four bins.
  GradHistogram hist({0}, 4);
  const double g[] = {0.5, 0.5, -0.5, -0.5};
  for (int b = 0; b < 4; ++b) {
    hist.AddSample(std::vector<int>{b}, {QuantizeGrad(g[b]), QuantizeGrad(0.25)});
  }
  GbtParams p;
  p.reg_lambda = 1.0;
  p.min_child_weight = 0.0;
  auto s = FindBestSplit(hist, p);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->bin, 1);
  EXPECT_NEAR(s->gain, 2.0 / 3.0, 1e-12);  // 1/2 [1/1.5 + 1/1.5 - 0]
  std::vector<double> col = {0, 1, 2, 3};
  EXPECT_DOUBLE_EQ(ComputeBins(col, 4).threshold(s->bin), 1.5);
}

TEST(Split, PureNodeHasNoSplit) {
  // Converged margins: every gradient is zero, so no cut gains anything.
  GbtParams p;
  p.min_child_weight = 0.0;
  p.reg_lambda = 1.0;
  GradHistogram zero({0, 1}, 4);
  for (int b = 0; b < 4; ++b) zero.AddSample(std::vector<int>{b, b}, {0, QuantizeGrad(0.1)});
  EXPECT_FALSE(FindBestSplit(zero, p).has_value());
}

TEST(Split, MinChildWeightBlocks) {
  GradHistogram hist({0}, 2);
  hist.AddSample(std::vector<int>{0}, {QuantizeGrad(1), QuantizeGrad(0.25)});
  hist.AddSample(std::vector<int>{1}, {QuantizeGrad(-1), QuantizeGrad(0.25)});
  GbtParams p;
  p.min_child_weight = 0.3;
  EXPECT_FALSE(FindBestSplit(hist, p).has_value());
  p.min_child_weight = 0.25;
  EXPECT_TRUE(FindBestSplit(hist, p).has_value());
}

TEST(Trainer, SingleLeafTrees) {
  auto d = testing::RandomDataset(1, 40, 3);
  GbtParams p;
  p.max_depth = 0;
  p.reg_lambda = 1.0;
  p.n_estimators = 3;
  BoostedEnsemble m = TrainCentralized(d, p, {});
  ASSERT_EQ(m.trees.size(), 3u);
  std::vector<double> margin(d.num_samples(), 0.0);
  for (const auto& t : m.trees) {
    ASSERT_EQ(t.nodes.size(), 1u);
    double G = 0, H = 0;
    for (size_t r = 0; r < d.num_samples(); ++r) {
      GradPair gp = LogisticGradients((*d.labels)[r], margin[r]);
      G += gp.g;
      H += gp.h;
    }
    const double w = -G / (H + 1.0);
    EXPECT_NEAR(t.nodes[0].weight, w, 1e-9);
    for (auto& v : margin) v += p.learning_rate * t.nodes[0].weight;
  }
}

TEST(Trainer, DeterministicAndSerializable) {
  auto d = testing::RandomDataset(2, 120, 6);
  GbtParams p;
  p.subsample = 0.8;
  TrainOptions o;
  o.seed = 9;
  BoostedEnsemble a = TrainCentralized(d, p, o);
  BoostedEnsemble b = TrainCentralized(d, p, o);
  EXPECT_EQ(a, b);
  EXPECT_EQ(ModelHash(a), ModelHash(b));
  EXPECT_EQ(ParseEnsemble(SerializeEnsemble(a)), a);
  o.seed = 10;
  EXPECT_NE(ModelHash(TrainCentralized(d, p, o)), ModelHash(a));
  EXPECT_THROW(TrainCentralized(d.SelectRows(std::vector<size_t>{}), p, o), DataError);
}

TEST(Trainer, LossNonincreasingOnSeparableData) {
  data::PartyDataset d = testing::RandomDataset(3, 60, 1);
  for (size_t r = 0; r < d.num_samples(); ++r) {
    d.x.at(r, 0) = static_cast<double>(r);
    (*d.labels)[r] = r >= 30 ? 1 : 0;
  }
  GbtParams p;
  p.learning_rate = 0.5;
  p.n_estimators = 15;
  p.max_depth = 2;
  BoostedEnsemble m = TrainCentralized(d, p, {});
  double prev = 1e9;
  BoostedEnsemble prefix = m;
  for (size_t t = 0; t <= m.trees.size(); ++t) {
    prefix.trees.assign(m.trees.begin(), m.trees.begin() + t);
    const double loss = MeanLogLoss(prefix, d);
    EXPECT_LE(loss, prev + 1e-12);
    prev = loss;
  }
  EXPECT_LT(prev, 0.05);
}

TEST(Trainer, PerNodeBinningTrains) {
  auto d = testing::RandomDataset(4, 100, 4);
  GbtParams p;
  p.n_estimators = 5;
  TrainOptions o;
  o.binning = BinningScope::kPerNode;
  BoostedEnsemble m = TrainCentralized(d, p, o);
  EXPECT_LT(MeanLogLoss(m, d), std::log(2.0));
}

TEST(Trainer, InBagRate) {
  int in = 0;
  for (int64_t id = 0; id < 10000; ++id) in += InBag(1, 0, id, 0.3);
  EXPECT_NEAR(in / 10000.0, 0.3, 0.02);
  EXPECT_TRUE(InBag(1, 0, 5, 1.0));
}

TEST(Predict, EmptyEnsembleAndSingleLeaf) {
  BoostedEnsemble m;
  m.base_score_logit = 0.4;
  std::vector<double> row = {1.0};
  EXPECT_DOUBLE_EQ(Predict(m, row).probability, Sigmoid(0.4));
  RegressionTree t;
  t.nodes.push_back(TreeNode{});
  t.nodes[0].weight = 2.0;
  m.trees.push_back(t);
  m.params.learning_rate = 0.3;
  EXPECT_DOUBLE_EQ(Predict(m, row).margin, 0.4 + 0.3 * 2.0);
}

TEST(Predict, HandBuiltDepthTwoTree) {
  // root: x0 <= 1 ? (x1 <= 5 ? leaf -1 : leaf 2) : leaf 3
  RegressionTree t;
  auto internal = [](int id, int depth, int f, double thr, int l, int r) {
    TreeNode n;
    n.id = id;
    n.depth = depth;
    n.is_leaf = false;
    n.feature_id = f;
    n.bin = 0;
    n.threshold = thr;
    n.left = l;
    n.right = r;
    return n;
  };
  auto leaf = [](int id, int depth, double w) {
    TreeNode n;
    n.id = id;
    n.depth = depth;
    n.weight = w;
    return n;
  };
  t.nodes = {internal(0, 0, 0, 1.0, 1, 2), internal(1, 1, 1, 5.0, 3, 4), leaf(2, 1, 3.0),
             leaf(3, 2, -1.0), leaf(4, 2, 2.0)};
  BoostedEnsemble m;
  m.params.learning_rate = 1.0;
  m.num_features = 2;
  m.trees.push_back(t);
  struct Case {
    std::vector<double> row;
    double margin;
  } cases[] = {{{0.5, 4.0}, -1.0}, {{1.0, 5.0}, -1.0}, {{0.0, 6.0}, 2.0}, {{2.0, 0.0}, 3.0}};
  for (const auto& c : cases) EXPECT_DOUBLE_EQ(PredictMargin(m, c.row), c.margin);
  EXPECT_EQ(t.Depth(), 2);
  EXPECT_EQ(t.NumLeaves(), 3);
  std::vector<double> short_row = {0.0};
  EXPECT_THROW(Predict(m, short_row), DataError);
}

}  // namespace
}  // namespace fedxgb::gbt
