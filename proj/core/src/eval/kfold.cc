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

#include "fedxgb/eval/kfold.h"

#include "fedxgb/common/errors.h"

namespace fedxgb::eval {

KFoldResult KFoldEvaluate(const FoldModel& model, std::span<const int> labels,
                          const data::FoldPlan& plan, const std::string& tag) {
  KFoldResult out;
  out.plan_hash = plan.Hash();
  for (size_t f = 0; f < plan.folds.size(); ++f) {
    const data::Fold& fold = plan.folds[f];
    std::vector<double> probs = model(fold);
    if (probs.size() != fold.test.size()) {
      throw DataError("k-fold: model returned " + std::to_string(probs.size()) +
                      " predictions for " + std::to_string(fold.test.size()) + " test rows");
    }
    std::vector<int> y;
    y.reserve(fold.test.size());
    for (size_t r : fold.test) y.push_back(labels[r]);
    out.folds.push_back(Evaluate(y, probs, static_cast<int>(f), tag));
  }
  out.mean = Average(out.folds, tag);
  return out;
}

KFoldResult KFoldEvaluate(const FoldModel& model, std::span<const int> labels, int k,
                          uint64_t seed, const std::string& tag) {
  data::FoldPlan plan = data::MakeFoldPlan(labels, k, 0.0, seed);
  return KFoldEvaluate(model, labels, plan, tag);
}

}  // namespace fedxgb::eval
