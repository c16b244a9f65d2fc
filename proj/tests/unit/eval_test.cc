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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fedxgb/common/errors.h"
#include "fedxgb/eval/kfold.h"
#include "fedxgb/eval/metrics.h"
#include "fedxgb/eval/privacy_cost.h"
#include "fedxgb_testing/oracles.h"

namespace fedxgb::eval {
namespace {

struct Draw {
  std::vector<int> y;
  std::vector<double> p;
};

Draw RandomDraw(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(2, 60);
  std::uniform_int_distribution<int> coarse(0, 8);
  std::bernoulli_distribution coin(0.5);
  Draw d;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    d.y.push_back(coin(rng));
    // Coarse scores give plenty of ties, including exactly 0.5.
    d.p.push_back(coarse(rng) / 8.0);
  }
  d.y[0] = 0;
  d.y[1] = 1;
  return d;
}

TEST(Metrics, MatchNaiveOracle) {
  std::mt19937_64 rng(2026);
  for (int t = 0; t < 1000; ++t) {
    const Draw d = RandomDraw(rng);
    const MetricReport m = Evaluate(d.y, d.p);
    const auto o = testing::NaiveThresholded(d.y, d.p);
    ASSERT_EQ(m.accuracy, o.accuracy);
    ASSERT_EQ(m.precision, o.precision);
    ASSERT_EQ(m.recall, o.recall);
    ASSERT_DOUBLE_EQ(m.f1, o.f1);
    ASSERT_EQ(m.fpr_standard, o.fpr_standard);
    ASSERT_EQ(m.fpr_alt, o.fpr_alt);
    ASSERT_NEAR(m.auc, testing::PairwiseAuc(d.y, d.p), 1e-12);
  }
}

TEST(Metrics, PerfectClassifier) {
  const std::vector<int> y = {0, 1, 1, 0};
  const std::vector<double> p = {0.1, 0.9, 0.7, 0.2};
  const MetricReport m = Evaluate(y, p);
  EXPECT_EQ(m.accuracy, 1.0);
  EXPECT_EQ(m.precision, 1.0);
  EXPECT_EQ(m.recall, 1.0);
  EXPECT_EQ(m.f1, 1.0);
  EXPECT_EQ(m.fpr_standard, 0.0);
  EXPECT_EQ(m.fpr_alt, 0.0);
  EXPECT_EQ(m.auc, 1.0);
}

TEST(Metrics, ConfusionCounts) {
  const std::vector<int> y = {1, 1, 0, 0, 0};
  const std::vector<double> p = {0.5, 0.4, 0.6, 0.1, 0.2};
  const ConfusionMatrix cm = Confusion(y, p);
  EXPECT_EQ(cm, (ConfusionMatrix{1, 1, 1, 2}));
  const MetricReport m = ComputeMetrics(cm);
  EXPECT_DOUBLE_EQ(m.fpr_standard, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.fpr_alt, 0.5);
}

TEST(Metrics, AucProperties) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::vector<int> y(200);
  std::vector<double> s(200), neg(200), mono(200);
  for (size_t i = 0; i < y.size(); ++i) {
    y[i] = i % 3 == 0;
    s[i] = normal(rng) + y[i];
    neg[i] = -s[i];
    mono[i] = std::exp(3 * s[i]) + 1;
  }
  EXPECT_NEAR(AucRoc(y, s) + AucRoc(y, neg), 1.0, 1e-12);
  EXPECT_EQ(AucRoc(y, s), AucRoc(y, mono));
  const std::vector<double> flat(200, 0.3);
  EXPECT_EQ(AucRoc(y, flat), 0.5);
  const std::vector<int> one_class(3, 1);
  EXPECT_THROW(AucRoc(one_class, std::vector<double>{1, 2, 3}), DataError);
  EXPECT_THROW(Evaluate(std::vector<int>{0, 2}, std::vector<double>{0.1, 0.2}), DataError);
  EXPECT_THROW(Confusion(std::vector<int>{0}, std::vector<double>{0.1, 0.2}), DataError);
}

TEST(PrivacyCost, PublishedValues) {
  const PrivacyCost fl = ComputePrivacyCost(PrivacyCostKind::kFederated, "auc", 89.61, 89.33);
  EXPECT_EQ(RoundTo2(fl.cost), 0.28);
  const PrivacyCost open =
      ComputePrivacyCost(PrivacyCostKind::kOpenShare, "auc", 89.61, 69.25);
  EXPECT_EQ(RoundTo2(open.cost), 20.36);
  EXPECT_EQ(ComputePrivacyCost(PrivacyCostKind::kFederated, "f1", 0.7, 0.7).cost, 0.0);
  EXPECT_EQ(ToString(PrivacyCostKind::kOpenShare), "open_share");
}

TEST(KFold, ConstantModelScoresMajorityRate) {
  std::vector<int> y(100, 0);
  for (int i = 0; i < 37; ++i) y[i * 2] = 1;
  const KFoldResult r = KFoldEvaluate(
      [](const data::Fold& f) { return std::vector<double>(f.test.size(), 0.2); }, y, 5, 9);
  ASSERT_EQ(r.folds.size(), 5u);
  EXPECT_NEAR(r.mean.accuracy, 0.63, 0.01);
  EXPECT_EQ(r.mean.auc, 0.5);
  EXPECT_FALSE(r.plan_hash.empty());
}

TEST(KFold, MeanLiesWithinFoldRange) {
  std::mt19937_64 rng(1);
  std::vector<int> y(150);
  std::vector<double> score(150);
  std::uniform_real_distribution<double> unit;
  for (size_t i = 0; i < y.size(); ++i) {
    y[i] = unit(rng) < 0.4;
    score[i] = std::clamp(0.3 * y[i] + unit(rng) * 0.7, 0.0, 1.0);
  }
  const KFoldResult r = KFoldEvaluate(
      [&](const data::Fold& f) {
        std::vector<double> out;
        for (size_t row : f.test) out.push_back(score[row]);
        return out;
      },
      y, 5, 3);
  double lo = 1, hi = 0;
  for (const MetricReport& m : r.folds) {
    lo = std::min(lo, m.auc);
    hi = std::max(hi, m.auc);
  }
  EXPECT_GE(r.mean.auc, lo);
  EXPECT_LE(r.mean.auc, hi);
  const KFoldResult again = KFoldEvaluate(
      [&](const data::Fold& f) {
        std::vector<double> out;
        for (size_t row : f.test) out.push_back(score[row]);
        return out;
      },
      y, 5, 3);
  EXPECT_EQ(again.plan_hash, r.plan_hash);
  EXPECT_THROW(KFoldEvaluate([](const data::Fold&) { return std::vector<double>{}; }, y, 1, 3),
               DataError);
}

}  // namespace
}  // namespace fedxgb::eval
