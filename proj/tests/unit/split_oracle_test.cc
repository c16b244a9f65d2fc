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

#include <gtest/gtest.h>

#include "fedxgb/common/fixed_point.h"
#include "fedxgb/gbt/histogram.h"
#include "fedxgb/gbt/split.h"
#include "fedxgb_testing/split_check.h"

namespace fedxgb::gbt {
namespace {

TEST(SplitOracle, MatchesExhaustiveSearch) {
  auto r = testing::CheckSplitsAgainstBruteForce(2000, 17);
  EXPECT_EQ(r.mismatches, 0) << r.first_failure;
}

TEST(SplitOracle, TieGoesToLowerFeatureIdThenBin) {
  // Two identical features; the copy with the lower global id wins even when
  // it is stored second.
  GradHistogram hist({5, 2}, 2);
  hist.AddSample(std::vector<int>{0, 0}, {QuantizeGrad(1.0), QuantizeGrad(1.0)});
  hist.AddSample(std::vector<int>{1, 1}, {QuantizeGrad(-1.0), QuantizeGrad(1.0)});
  GbtParams p;
  p.min_child_weight = 0.0;
  auto s = FindBestSplit(hist, p);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->feature_id, 2);
  EXPECT_EQ(s->feature, 1);
}

}  // namespace
}  // namespace fedxgb::gbt
