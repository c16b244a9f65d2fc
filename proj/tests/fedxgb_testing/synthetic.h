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

#ifndef FEDXGB_TESTING_SYNTHETIC_H_
#define FEDXGB_TESTING_SYNTHETIC_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fedxgb/data/dataset.h"

namespace fedxgb::testing {

// Labeled dataset with `num_features` columns named after the well schema
// (first columns), Gaussian-ish features and labels from a noisy linear
// score. Both classes are guaranteed.
inline data::PartyDataset RandomDataset(uint64_t seed, size_t rows, size_t num_features,
                                        const std::string& party_id = "p",
                                        int64_t first_id = 1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  data::PartyDataset d;
  d.party_id = party_id;
  const auto& schema = data::WellFeatureSchema();
  for (size_t c = 0; c < num_features; ++c) d.features.push_back(schema.at(c));
  d.x = data::FeatureMatrix(rows, num_features);
  std::vector<double> w(num_features);
  for (auto& v : w) v = normal(rng);
  std::vector<int> labels(rows);
  for (size_t r = 0; r < rows; ++r) {
    d.sample_ids.push_back(first_id + static_cast<int64_t>(r));
    double score = 0.0;
    for (size_t c = 0; c < num_features; ++c) {
      // Mix of continuous and coarse columns so ties and empty bins occur.
      double v = c % 5 == 4 ? std::floor(unit(rng) * 4.0) : normal(rng) * (1.0 + c % 3);
      d.x.at(r, c) = v;
      score += w[c] * v;
    }
    labels[r] = score + normal(rng) > 0.0 ? 1 : 0;
  }
  labels[0] = 0;
  labels[rows - 1] = 1;
  d.labels = labels;
  return d;
}

// Splits `d` into `parts` contiguous row blocks with the given party ids.
inline std::vector<data::PartyDataset> SplitRows(const data::PartyDataset& d,
                                                 const std::vector<size_t>& sizes) {
  std::vector<data::PartyDataset> out;
  size_t start = 0;
  for (size_t i = 0; i < sizes.size(); ++i) {
    std::vector<size_t> rows;
    for (size_t r = start; r < start + sizes[i]; ++r) rows.push_back(r);
    start += sizes[i];
    out.push_back(d.SelectRows(rows));
    out.back().party_id = "client" + std::to_string(i);
  }
  return out;
}

}  // namespace fedxgb::testing

#endif  // FEDXGB_TESTING_SYNTHETIC_H_
