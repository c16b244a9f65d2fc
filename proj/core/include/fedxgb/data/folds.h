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

#ifndef FEDXGB_DATA_FOLDS_H_
#define FEDXGB_DATA_FOLDS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fedxgb::data {

struct Fold {
  std::vector<size_t> train;  // excludes the validation rows
  std::vector<size_t> valid;
  std::vector<size_t> test;
};

struct FoldPlan {
  int k = 0;
  uint64_t seed = 0;  // seed that produced the plan (after retries)
  std::vector<Fold> folds;
  std::vector<int> test_fold_of_row;

  // Hex digest of the assignment; equal plans have equal hashes.
  std::string Hash() const;
};

// Stratified k-fold plan. Rows are grouped by `strata` (typically the label,
// optionally combined with the party), each group is shuffled and dealt
// round-robin across folds. Within each fold's training rows a stratified
// `valid_fraction` is held out for validation. If some test fold lacks one
// of the two label classes the plan is redrawn with the next seed, up to
// `max_retries` times (DataError after that). Throws DataError for k < 2 or
// fewer rows than folds.
FoldPlan MakeFoldPlan(std::span<const int> labels, std::span<const int> strata,
                      int k, double valid_fraction, uint64_t seed,
                      int max_retries = 16);

// Strata = labels.
FoldPlan MakeFoldPlan(std::span<const int> labels, int k, double valid_fraction,
                      uint64_t seed);

// Seeded stratified split of `rows` into (train, valid) with a fraction of
// each label class in valid.
void StratifiedHoldout(std::span<const size_t> rows, std::span<const int> labels,
                       double fraction, uint64_t seed, std::vector<size_t>* train,
                       std::vector<size_t>* valid);

}  // namespace fedxgb::data

#endif  // FEDXGB_DATA_FOLDS_H_
