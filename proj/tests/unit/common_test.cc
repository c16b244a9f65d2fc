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

#include <set>

#include <gtest/gtest.h>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/fixed_point.h"
#include "fedxgb/common/rng.h"

namespace fedxgb {
namespace {

TEST(Rng, DeriveSeedDependsOnTagOrder) {
  EXPECT_NE(DeriveSeed(1, {2, 3}), DeriveSeed(1, {3, 2}));
  EXPECT_EQ(DeriveSeed(1, {2, 3}), DeriveSeed(1, {2, 3}));
  EXPECT_NE(DeriveSeed(1, {2}), DeriveSeed(2, {2}));
}

TEST(Rng, KeyedStreamIsReproducible) {
  KeyedStream a(42), b(42), c(43);
  for (int i = 0; i < 10; ++i) {
    const uint64_t x = a.Next();
    EXPECT_EQ(x, b.Next());
    EXPECT_NE(x, c.Next());
  }
}

TEST(Rng, KeyedUniformInUnitInterval) {
  std::set<double> seen;
  for (uint64_t i = 0; i < 1000; ++i) {
    const double u = KeyedUniform(7, {i});
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    seen.insert(u);
  }
  EXPECT_GT(seen.size(), 990u);
}

TEST(Rng, Fnv1aKnownValues) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(FixedPoint, RoundTripAndRange) {
  EXPECT_EQ(QuantizeGrad(1.0), int64_t{1} << 40);
  EXPECT_EQ(QuantizeGrad(-0.5), -(int64_t{1} << 39));
  EXPECT_DOUBLE_EQ(DequantizeGrad(QuantizeGrad(0.25)), 0.25);
  EXPECT_NEAR(DequantizeGrad(QuantizeGrad(0.1)), 0.1, 1e-12);
  EXPECT_THROW(QuantizeGrad(1e7), EncodingError);
}

}  // namespace
}  // namespace fedxgb
