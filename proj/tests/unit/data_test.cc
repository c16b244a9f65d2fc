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
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "fedxgb/common/errors.h"
#include "fedxgb/data/csv.h"
#include "fedxgb/data/folds.h"
#include "fedxgb/data/partition.h"
#include "fedxgb/data/synth.h"
#include "fedxgb_testing/synthetic.h"

namespace fedxgb::data {
namespace {

std::string FullHeader() {
  std::string h = "well_id";
  for (const auto& f : WellFeatureSchema()) h += "," + f.symbol;
  return h + ",label";
}

std::string Row(int id, double base, int label) {
  std::string r = std::to_string(id);
  for (int c = 0; c < 32; ++c) r += "," + std::to_string(base + c);
  return r + "," + std::to_string(label);
}

const std::pair<PartyDataset, PartyDataset>& Default() {
  static const auto d = SynthGenerate(DefaultSynthConfig());
  return d;
}

TEST(Csv, ThreeRowFile) {
  std::istringstream in(FullHeader() + "\n" + Row(1, 0.5, 0) + "\n" + Row(2, 1.5, 1) + "\n" +
                        Row(3, 2.5, 1) + "\n");
  PartyDataset d = ParseCsv(in, WellFeatureSchema(), "A");
  EXPECT_EQ(d.num_samples(), 3u);
  EXPECT_EQ(d.num_features(), 32u);
  EXPECT_EQ(*d.labels, (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(d.sample_ids, (std::vector<int64_t>{1, 2, 3}));
  EXPECT_DOUBLE_EQ(d.x.at(1, 3), 4.5);
}

TEST(Csv, BlankCellNamesRowAndColumn) {
  std::string bad = Row(2, 1.5, 1);
  // Blank out the G3 cell.
  size_t pos = 0;
  for (int i = 0; i < 3; ++i) pos = bad.find(',', pos) + 1;
  bad.erase(pos, bad.find(',', pos) - pos);
  std::istringstream in(FullHeader() + "\n" + Row(1, 0.5, 0) + "\n" + bad + "\n");
  try {
    ParseCsv(in, WellFeatureSchema(), "A");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("row 2"), std::string::npos) << what;
    EXPECT_NE(what.find("G3"), std::string::npos) << what;
  }
}

TEST(Csv, RejectsMalformedFiles) {
  std::istringstream empty("");
  EXPECT_THROW(ParseCsv(empty, WellFeatureSchema(), "A"), DataError);
  std::istringstream unknown("well_id,Z9\n1,2\n");
  EXPECT_THROW(ParseCsv(unknown, WellFeatureSchema(), "A"), DataError);
  std::istringstream text("well_id,G1\n1,abc\n");
  EXPECT_THROW(ParseCsv(text, WellFeatureSchema(), "A"), DataError);
  std::istringstream header_only("well_id,G1\n");
  EXPECT_THROW(ParseCsv(header_only, WellFeatureSchema(), "A"), DataError);
}

TEST(Csv, RoundTripIsBitExact) {
  const PartyDataset& a = Default().first;
  std::stringstream buf;
  WriteCsv(buf, a);
  PartyDataset back = ParseCsv(buf, WellFeatureSchema(), a.party_id);
  EXPECT_EQ(back.x, a.x);
  EXPECT_EQ(back.labels, a.labels);
  EXPECT_EQ(back.sample_ids, a.sample_ids);
}

TEST(Synth, DefaultSizesAndRates) {
  const auto& [a, b] = Default();
  EXPECT_EQ(a.num_samples(), 72u);
  EXPECT_EQ(b.num_samples(), 212u);
  EXPECT_EQ(a.num_features(), 32u);
  const auto pos = [](const PartyDataset& d) {
    return std::count(d.labels->begin(), d.labels->end(), 1);
  };
  EXPECT_NEAR(pos(a) / 72.0, 0.3472, 0.03);
  EXPECT_NEAR(pos(b) / 212.0, 0.6887, 0.03);
  std::set<int64_t> ids(a.sample_ids.begin(), a.sample_ids.end());
  for (int64_t id : b.sample_ids) EXPECT_TRUE(ids.insert(id).second);
}

TEST(Synth, RatesStayInsideToleranceAcrossSeeds) {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    SynthConfig c = DefaultSynthConfig();
    c.seed = seed;
    auto [a, b] = SynthGenerate(c);
    const auto pa = std::count(a.labels->begin(), a.labels->end(), 1);
    const auto pb = std::count(b.labels->begin(), b.labels->end(), 1);
    EXPECT_LE(std::abs(pa - 25), 2) << "seed " << seed;   // floor(0.03 * 72)
    EXPECT_LE(std::abs(pb - 146), 6) << "seed " << seed;  // floor(0.03 * 212)
  }
}

TEST(Synth, ZeroToleranceHitsRoundedTargets) {
  SynthConfig c = DefaultSynthConfig();
  c.rate_tolerance = 0.0;
  auto [a, b] = SynthGenerate(c);
  EXPECT_EQ(std::count(a.labels->begin(), a.labels->end(), 1), 25);   // round(0.3472 * 72)
  EXPECT_EQ(std::count(b.labels->begin(), b.labels->end(), 1), 146);  // round(0.6887 * 212)
}

TEST(Synth, MarginalsFollowSummaryStatistics) {
  const PartyDataset& a = Default().first;
  const std::vector<double> g1 = a.x.column(0);
  for (double v : g1) {
    EXPECT_GE(v, 895.63);
    EXPECT_LE(v, 2163.00);
  }
  const double mean = std::accumulate(g1.begin(), g1.end(), 0.0) / g1.size();
  EXPECT_NEAR(mean, 1570.38, 0.05 * 1570.38);
  // G7 has median 0 and a positive mean: a point mass at zero.
  const std::vector<double> g7 = a.x.column(6);
  EXPECT_GT(std::count(g7.begin(), g7.end(), 0.0), 36);
  EXPECT_GT(*std::max_element(g7.begin(), g7.end()), 0.0);
}

TEST(Synth, SeedDeterminesEveryByte) {
  SynthConfig c = DefaultSynthConfig();
  c.seed = 77;
  auto [a1, b1] = SynthGenerate(c);
  auto [a2, b2] = SynthGenerate(c);
  EXPECT_EQ(a1, a2);
  EXPECT_EQ(b1, b2);
  c.seed = 78;
  EXPECT_NE(SynthGenerate(c).first.x, a1.x);
}

TEST(Synth, UnreachableRateIsRejected) {
  SynthConfig c = DefaultSynthConfig();
  c.districts[0].positive_rate = 1.5;
  EXPECT_THROW(SynthGenerate(c), ConfigError);
  c = DefaultSynthConfig();
  c.rate_tolerance = 0.5;
  EXPECT_THROW(c.Validate(), ConfigError);
  SynthConfig back = SynthConfigFromJson(ToJson(DefaultSynthConfig()));
  EXPECT_EQ(SynthGenerate(back).first, Default().first);
}

TEST(Partition, HorizontalUnionSize) {
  std::vector<PartyDataset> parts = {Default().first, Default().second};
  EXPECT_EQ(HorizontalUnion(parts).num_samples(), 284u);
  PartyDataset other = testing::RandomDataset(1, 5, 3, "x", 1000);
  parts.push_back(other);
  EXPECT_THROW(HorizontalUnion(parts), DataError);
}

TEST(Partition, VerticalSplitAndRejoin) {
  std::vector<PartyDataset> parts = {Default().first, Default().second};
  PartyDataset joined = HorizontalUnion(parts, "joined");
  auto vp = VerticalPartition(joined, DefaultVerticalSplit());
  ASSERT_EQ(vp.size(), 2u);
  EXPECT_EQ(vp[0].party_id, "oil_company");
  EXPECT_EQ(vp[0].num_features(), 16u);
  EXPECT_TRUE(vp[0].has_labels());
  EXPECT_EQ(vp[1].num_features(), 16u);
  EXPECT_FALSE(vp[1].has_labels());
  EXPECT_EQ(vp[0].features[0].symbol, "O1");
  PartyDataset back = VerticalRejoin(vp, "joined");
  EXPECT_EQ(back.x, joined.x);
  EXPECT_EQ(back.labels, joined.labels);
  EXPECT_EQ(back.sample_ids, joined.sample_ids);

  VerticalSplit overlap = DefaultVerticalSplit();
  overlap.symbols[1].push_back("O1");
  EXPECT_THROW(VerticalPartition(joined, overlap), DataError);
}

TEST(Folds, SizesAndStratification) {
  std::vector<PartyDataset> parts = {Default().first, Default().second};
  PartyDataset all = HorizontalUnion(parts);
  FoldPlan plan = MakeFoldPlan(*all.labels, 5, 0.0, 3);
  ASSERT_EQ(plan.folds.size(), 5u);
  std::vector<int> seen(all.num_samples(), 0);
  for (const Fold& f : plan.folds) {
    EXPECT_GE(f.test.size(), 56u);
    EXPECT_LE(f.test.size(), 57u);
    EXPECT_EQ(f.train.size() + f.test.size(), 284u);
    int pos = 0;
    for (size_t r : f.test) {
      ++seen[r];
      pos += (*all.labels)[r];
    }
    EXPECT_GE(pos, 171 / 5);
    EXPECT_LE(pos, 171 / 5 + 1);
  }
  for (int s : seen) EXPECT_EQ(s, 1);
  EXPECT_EQ(MakeFoldPlan(*all.labels, 5, 0.0, 3).Hash(), plan.Hash());
  EXPECT_NE(MakeFoldPlan(*all.labels, 5, 0.0, 4).Hash(), plan.Hash());
}

TEST(Folds, ValidationHoldout) {
  auto d = testing::RandomDataset(2, 100, 2);
  FoldPlan plan = MakeFoldPlan(*d.labels, 4, 0.1, 1);
  for (const Fold& f : plan.folds) {
    std::set<size_t> train(f.train.begin(), f.train.end());
    for (size_t r : f.valid) EXPECT_FALSE(train.count(r));
    EXPECT_NEAR(static_cast<double>(f.valid.size()), 7.5, 2.0);
  }
  std::vector<int> one_class(10, 1);
  EXPECT_THROW(MakeFoldPlan(one_class, 5, 0.0, 1), DataError);
}

}  // namespace
}  // namespace fedxgb::data
