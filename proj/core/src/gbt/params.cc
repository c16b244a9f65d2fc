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

#include "fedxgb/gbt/params.h"

#include <string>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/rng.h"

namespace fedxgb::gbt {

void GbtParams::Validate() const {
  auto fail = [](const std::string& what) {
    throw ConfigError("invalid booster parameter: " + what);
  };
  if (n_estimators < 1) fail("n_estimators must be >= 1");
  if (max_depth < 0) fail("max_depth must be >= 0");
  if (!(learning_rate > 0.0)) fail("learning_rate must be > 0");
  if (max_bin < 2 || max_bin > 65536) fail("max_bin must be in [2, 65536]");
  if (min_child_weight < 0.0) fail("min_child_weight must be >= 0");
  if (reg_alpha < 0.0) fail("reg_alpha must be >= 0");
  if (reg_lambda < 0.0) fail("reg_lambda must be >= 0");
  if (gamma < 0.0) fail("gamma must be >= 0");
  if (!(subsample > 0.0 && subsample <= 1.0)) fail("subsample must be in (0, 1]");
  if (min_split_gain < 0.0) fail("min_split_gain must be >= 0");
}

double InitialLogit(const GbtParams& params, const TrainOptions& options) {
  if (options.base_init == BaseScoreInit::kFixed) return params.base_score_logit;
  return 2.0 * KeyedUniform(options.seed, {0x6261736555ULL}) - 1.0;
}

void to_json(nlohmann::json& j, const GbtParams& p) {
  j = nlohmann::json{{"n_estimators", p.n_estimators},
                     {"max_depth", p.max_depth},
                     {"learning_rate", p.learning_rate},
                     {"max_bin", p.max_bin},
                     {"min_child_weight", p.min_child_weight},
                     {"reg_alpha", p.reg_alpha},
                     {"reg_lambda", p.reg_lambda},
                     {"gamma", p.gamma},
                     {"subsample", p.subsample},
                     {"min_split_gain", p.min_split_gain},
                     {"base_score_logit", p.base_score_logit}};
}

void from_json(const nlohmann::json& j, GbtParams& p) {
  GbtParams d;
  p.n_estimators = j.value("n_estimators", d.n_estimators);
  p.max_depth = j.value("max_depth", d.max_depth);
  p.learning_rate = j.value("learning_rate", d.learning_rate);
  p.max_bin = j.value("max_bin", d.max_bin);
  p.min_child_weight = j.value("min_child_weight", d.min_child_weight);
  p.reg_alpha = j.value("reg_alpha", d.reg_alpha);
  p.reg_lambda = j.value("reg_lambda", d.reg_lambda);
  p.gamma = j.value("gamma", d.gamma);
  p.subsample = j.value("subsample", d.subsample);
  p.min_split_gain = j.value("min_split_gain", d.min_split_gain);
  p.base_score_logit = j.value("base_score_logit", d.base_score_logit);
}

const char* ToString(BinningScope scope) {
  return scope == BinningScope::kGlobal ? "global" : "per_node";
}

BinningScope BinningScopeFromString(const std::string& s) {
  if (s == "global") return BinningScope::kGlobal;
  if (s == "per_node") return BinningScope::kPerNode;
  throw ConfigError("unknown binning scope '" + s + "'");
}

}  // namespace fedxgb::gbt
