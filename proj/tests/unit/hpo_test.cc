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
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "fedxgb/common/errors.h"
#include "fedxgb/hpo/aggregate.h"
#include "fedxgb/hpo/bayes_opt.h"
#include "fedxgb/hpo/gp.h"
#include "fedxgb/hpo/search_space.h"
#include "fedxgb/hpo/tuning.h"
#include "fedxgb_testing/synthetic.h"

namespace fedxgb::hpo {
namespace {

TunedParams Local(std::vector<double> values) {
  TunedParams t;
  t.values = std::move(values);
  return t;
}

TEST(SearchSpace, DefaultBounds) {
  const SearchSpace s = SearchSpace::BoosterDefault();
  EXPECT_EQ(s.size(), 8u);
  const int depth = s.IndexOf("max_depth");
  ASSERT_GE(depth, 0);
  EXPECT_EQ(s.dims()[depth].kind, ParamKind::kInteger);
  EXPECT_EQ(s.IndexOf("nope"), -1);
  std::vector<double> x = s.FromUnit(std::vector<double>(8, 0.5));
  EXPECT_FALSE(s.Contains(std::vector<double>(8, -1.0)));
  const std::vector<double> r = s.Round(x);
  EXPECT_TRUE(s.Contains(r));
  EXPECT_EQ(r[depth], 5.0);
  const gbt::GbtParams p = s.Apply(gbt::GbtParams{}, r);
  EXPECT_EQ(p.max_depth, 5);
  EXPECT_EQ(s.FromParams(p), r);
}

TEST(Gp, InterpolatesTrainingTargets) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit;
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 12; ++i) {
    x.push_back({unit(rng), unit(rng)});
    y.push_back(std::sin(4 * x.back()[0]) + x.back()[1]);
  }
  const GpSurrogate gp = GpSurrogate::Fit(x, y, {0.5, 1e-10});
  for (size_t i = 0; i < x.size(); ++i) {
    const Posterior p = gp.Predict(x[i]);
    EXPECT_NEAR(p.mean, y[i], 1e-4);
    EXPECT_LT(p.variance, 1e-4);
  }
  EXPECT_GT(gp.Predict(std::vector<double>{5.0, 5.0}).variance, 0.9);
  EXPECT_THROW(GpSurrogate::Fit({}, {}), ConfigError);
}

TEST(Gp, DuplicatePointsRaiseJitter) {
  const GpSurrogate gp = GpSurrogate::Fit({{0.2}, {0.2}}, {1.0, 1.0}, {1.0, 0.0});
  EXPECT_GT(gp.jitter_used(), 0.0);
  EXPECT_NEAR(gp.Predict(std::vector<double>{0.2}).mean, 1.0, 1e-3);
}

TEST(Ei, NonNegativeAndMonotone) {
  for (double best : {-1.0, 0.0, 2.0}) {
    double prev_mean = -1;
    for (double mean = -3; mean <= 3; mean += 0.25) {
      const double ei = ExpectedImprovement({mean, 0.3}, best);
      EXPECT_GE(ei, 0.0);
      if (mean > -3) EXPECT_GE(ei, prev_mean);
      prev_mean = ei;
    }
    double prev_var = -1;
    for (double var = 0.01; var < 4; var *= 2) {
      const double ei = ExpectedImprovement({0.0, var}, best);
      EXPECT_GE(ei, prev_var);
      prev_var = ei;
    }
  }
  EXPECT_EQ(ExpectedImprovement({0.0, 0.0}, 1.0), 0.0);
}

TEST(Bo, FindsQuadraticOptimum) {
  const SearchSpace s({{"x", ParamKind::kContinuous, 0.0, 1.0}});
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    BoOptions o;
    o.budget = 25;
    o.seed = seed;
    BoTrace trace;
    const TunedParams t = BoOptimize(
        [](std::span<const double> x) { return -(x[0] - 0.3) * (x[0] - 0.3); }, s, o, &trace);
    EXPECT_NEAR(t.values[0], 0.3, 0.05) << "seed " << seed;
    EXPECT_EQ(trace.points.size(), 25u);
    EXPECT_EQ(t.provenance, Provenance::kDirect);
  }
}

TEST(Bo, SurvivesFailingObjective) {
  const SearchSpace s({{"x", ParamKind::kContinuous, 0.0, 1.0}});
  BoOptions o;
  o.budget = 10;
  o.initial_points = 3;
  const TunedParams t = BoOptimize(
      [](std::span<const double> x) -> double {
        if (x[0] > 0.5) throw std::runtime_error("boom");
        return x[0];
      },
      s, o);
  EXPECT_LE(t.values[0], 0.5);
  o.budget = 2;
  EXPECT_THROW(BoOptimize([](std::span<const double>) { return 0.0; }, s, o), ConfigError);
}

TEST(Bo, HaltonPoints) {
  EXPECT_EQ(Halton(1, 2), (std::vector<double>{0.5, 1.0 / 3.0}));
  EXPECT_EQ(Halton(2, 1), (std::vector<double>{0.25}));
}

TEST(Aggregate, SizeWeightedLearningRate) {
  const SearchSpace s({{"learning_rate", ParamKind::kContinuous, 0.01, 0.5}});
  const std::vector<PartyTuned> locals = {{Local({0.2}), 72}, {Local({0.4}), 212}};
  const TunedParams t = AggregateParams(locals, s);
  EXPECT_NEAR(t.values[0], 0.349296, 1e-6);
  EXPECT_NEAR(t.values[0], (72 * 0.2 + 212 * 0.4) / 284.0, 1e-12);
  EXPECT_EQ(t.provenance, Provenance::kAggregated);
}

TEST(Aggregate, IntegerRoundsHalfAway) {
  const SearchSpace s({{"max_depth", ParamKind::kInteger, 0, 10}});
  const std::vector<PartyTuned> locals = {{Local({4}), 10}, {Local({7}), 10}};
  const TunedParams t = AggregateParams(locals, s);
  EXPECT_EQ(t.raw[0], 5.5);
  EXPECT_EQ(t.values[0], 6.0);
}

TEST(Aggregate, ConvexCombinationAndErrors) {
  const SearchSpace s = SearchSpace::BoosterDefault();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit;
  std::uniform_int_distribution<int64_t> size(1, 500);
  for (int t = 0; t < 100; ++t) {
    std::vector<PartyTuned> locals;
    for (int p = 0; p < 3; ++p) {
      std::vector<double> u(s.size());
      for (auto& v : u) v = unit(rng);
      locals.push_back({Local(s.Round(s.FromUnit(u))), size(rng)});
    }
    const TunedParams a = AggregateParams(locals, s);
    for (size_t i = 0; i < s.size(); ++i) {
      double lo = 1e300, hi = -1e300;
      for (const auto& l : locals) {
        lo = std::min(lo, l.params.values[i]);
        hi = std::max(hi, l.params.values[i]);
      }
      EXPECT_GE(a.raw[i], lo - 1e-12);
      EXPECT_LE(a.raw[i], hi + 1e-12);
    }
  }
  EXPECT_THROW(AggregateParams({}, s), ConfigError);
  const std::vector<PartyTuned> zero = {{Local(std::vector<double>(8, 0.5)), 0}};
  EXPECT_THROW(AggregateParams(zero, s), ConfigError);
  const std::vector<PartyTuned> wrong = {{Local({0.5}), 3}};
  EXPECT_THROW(AggregateParams(wrong, s), ConfigError);
}

TEST(Tuning, OnePartyAggregateEqualsDirect) {
  const data::PartyDataset d = testing::RandomDataset(4, 120, 4);
  TuneSettings settings;
  settings.base.n_estimators = 4;
  settings.base.max_depth = 2;
  settings.space = SearchSpace({{"learning_rate", ParamKind::kContinuous, 0.05, 0.5},
                                {"max_depth", ParamKind::kInteger, 1, 3}});
  settings.bo.budget = 5;
  settings.bo.initial_points = 3;
  settings.bo.candidates = 64;
  settings.bo.seed = 12;
  const TunedParams direct = TuneDirect(d, settings);
  const TunedParams agg = TuneFederatedAggregated(std::span(&d, 1), settings);
  EXPECT_EQ(direct.values, agg.values);
  EXPECT_TRUE(std::isfinite(direct.objective));
  EXPECT_EQ(TuneDirect(d, settings).values, direct.values);
  const TunedParams back = TunedParamsFromJson(ToJson(direct));
  EXPECT_EQ(back.values, direct.values);
  EXPECT_EQ(back.names, direct.names);
  EXPECT_EQ(TuneModeFromString(ToString(TuneMode::kFederatedAggregated)),
            TuneMode::kFederatedAggregated);
}

}  // namespace
}  // namespace fedxgb::hpo
