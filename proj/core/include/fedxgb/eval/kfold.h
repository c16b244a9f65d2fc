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

#ifndef FEDXGB_EVAL_KFOLD_H_
#define FEDXGB_EVAL_KFOLD_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fedxgb/data/folds.h"
#include "fedxgb/eval/metrics.h"

namespace fedxgb::eval {

// Trains on `fold.train` (optionally using `fold.valid`) and returns one
// probability per row of `fold.test`, in order.
using FoldModel = std::function<std::vector<double>(const data::Fold& fold)>;

struct KFoldResult {
  MetricReport mean;
  std::vector<MetricReport> folds;
  std::string plan_hash;
};

// Runs `model` on every fold of `plan` and averages the fold metrics.
KFoldResult KFoldEvaluate(const FoldModel& model, std::span<const int> labels,
                          const data::FoldPlan& plan, const std::string& tag = "");

// Stratified plan with no validation hold-out, then KFoldEvaluate. Throws
// DataError for k < 2 or an unsplittable label vector.
KFoldResult KFoldEvaluate(const FoldModel& model, std::span<const int> labels, int k,
                          uint64_t seed, const std::string& tag = "");

}  // namespace fedxgb::eval

#endif  // FEDXGB_EVAL_KFOLD_H_
