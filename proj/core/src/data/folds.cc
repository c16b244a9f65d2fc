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

#include "fedxgb/data/folds.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/rng.h"

namespace fedxgb::data {
namespace {

void Shuffle(std::vector<size_t>& v, KeyedStream& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = rng.Next() % i;
    std::swap(v[i - 1], v[j]);
  }
}

FoldPlan Draw(std::span<const int> labels, std::span<const int> strata, int k,
              double valid_fraction, uint64_t seed) {
  const size_t n = labels.size();
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.test_fold_of_row.assign(n, -1);
  std::map<int, std::vector<size_t>> groups;
  for (size_t r = 0; r < n; ++r) groups[strata[r]].push_back(r);
  KeyedStream rng(DeriveSeed(seed, {0x666f6c64}));
  size_t next = 0;
  for (auto& [stratum, rows] : groups) {
    Shuffle(rows, rng);
    for (size_t r : rows) plan.test_fold_of_row[r] = static_cast<int>(next++ % k);
  }
  plan.folds.resize(k);
  for (int f = 0; f < k; ++f) {
    std::vector<size_t> train;
    for (size_t r = 0; r < n; ++r) {
      if (plan.test_fold_of_row[r] == f) {
        plan.folds[f].test.push_back(r);
      } else {
        train.push_back(r);
      }
    }
    StratifiedHoldout(train, labels, valid_fraction,
                      DeriveSeed(seed, {0x76616c69, static_cast<uint64_t>(f)}),
                      &plan.folds[f].train, &plan.folds[f].valid);
  }
  return plan;
}

bool BothClasses(const std::vector<size_t>& rows, std::span<const int> labels) {
  bool pos = false, neg = false;
  for (size_t r : rows) (labels[r] == 1 ? pos : neg) = true;
  return pos && neg;
}

}  // namespace

void StratifiedHoldout(std::span<const size_t> rows, std::span<const int> labels,
                       double fraction, uint64_t seed, std::vector<size_t>* train,
                       std::vector<size_t>* valid) {
  train->clear();
  valid->clear();
  std::map<int, std::vector<size_t>> by_class;
  for (size_t r : rows) by_class[labels[r]].push_back(r);
  KeyedStream rng(seed);
  std::vector<bool> held(labels.size(), false);
  for (auto& [y, members] : by_class) {
    Shuffle(members, rng);
    size_t m = static_cast<size_t>(std::lround(fraction * members.size()));
    for (size_t i = 0; i < m && i < members.size(); ++i) held[members[i]] = true;
  }
  for (size_t r : rows) (held[r] ? valid : train)->push_back(r);
}

std::string FoldPlan::Hash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](uint64_t v) { h = Mix64(h ^ v); };
  mix(static_cast<uint64_t>(k));
  for (const Fold& f : folds) {
    for (const auto* part : {&f.train, &f.valid, &f.test}) {
      mix(0xffffffffULL);
      for (size_t r : *part) mix(r);
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FoldPlan MakeFoldPlan(std::span<const int> labels, std::span<const int> strata, int k,
                      double valid_fraction, uint64_t seed, int max_retries) {
  if (k < 2) throw DataError("fold plan: k must be >= 2");
  if (labels.size() < static_cast<size_t>(k)) {
    throw DataError("fold plan: fewer samples than folds");
  }
  if (strata.size() != labels.size()) throw DataError("fold plan: strata size mismatch");
  if (!(valid_fraction >= 0.0 && valid_fraction < 1.0)) {
    throw DataError("fold plan: valid_fraction must be in [0, 1)");
  }
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    FoldPlan plan = Draw(labels, strata, k, valid_fraction, seed + attempt);
    bool ok = std::all_of(plan.folds.begin(), plan.folds.end(), [&](const Fold& f) {
      return BothClasses(f.test, labels) && BothClasses(f.train, labels);
    });
    if (ok) return plan;
  }
  throw DataError("fold plan: some fold lacks a class after " +
                  std::to_string(max_retries + 1) + " draws");
}

FoldPlan MakeFoldPlan(std::span<const int> labels, int k, double valid_fraction,
                      uint64_t seed) {
  return MakeFoldPlan(labels, labels, k, valid_fraction, seed);
}

}  // namespace fedxgb::data
