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

#ifndef FEDXGB_GBT_PARAMS_H_
#define FEDXGB_GBT_PARAMS_H_

#include <cstdint>

#include <nlohmann/json.hpp>

namespace fedxgb::gbt {

// How per-feature bin boundaries are chosen while growing a tree.
enum class BinningScope {
  kGlobal,   // once per training run, from each feature's (min, max)
  kPerNode,  // at every node, from the (min, max) over the node's samples
};

enum class BaseScoreInit {
  kFixed,         // use GbtParams::base_score_logit as given
  kSeededRandom,  // draw the initial logit uniformly from [-1, 1]
};

// Booster hyperparameters. Defaults follow the fixed settings used by the
// reference experiments (learning_rate 0.3, max_bin 32, max_depth 5, ...).
struct GbtParams {
  int n_estimators = 20;
  int max_depth = 5;
  double learning_rate = 0.3;
  int max_bin = 32;
  double min_child_weight = 1.0;
  double reg_alpha = 0.0;
  double reg_lambda = 0.0;
  double gamma = 0.0;
  double subsample = 1.0;
  double min_split_gain = 0.0;
  double base_score_logit = 0.0;

  // Throws ConfigError on out-of-range values.
  void Validate() const;

  bool operator==(const GbtParams&) const = default;
};

// Options that are not hyperparameters but still change the trained model.
struct TrainOptions {
  uint64_t seed = 0;
  BinningScope binning = BinningScope::kGlobal;
  BaseScoreInit base_init = BaseScoreInit::kFixed;
};

// Resolves the initial logit for a training run.
double InitialLogit(const GbtParams& params, const TrainOptions& options);

void to_json(nlohmann::json& j, const GbtParams& p);
void from_json(const nlohmann::json& j, GbtParams& p);

const char* ToString(BinningScope scope);
BinningScope BinningScopeFromString(const std::string& s);

}  // namespace fedxgb::gbt

#endif  // FEDXGB_GBT_PARAMS_H_
