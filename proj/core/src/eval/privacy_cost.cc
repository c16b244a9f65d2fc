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

#include "fedxgb/eval/privacy_cost.h"

#include <cmath>

namespace fedxgb::eval {

PrivacyCost ComputePrivacyCost(PrivacyCostKind kind, const std::string& metric,
                               double a_open_share, double a_other) {
  return {kind, metric, a_open_share, a_other, a_open_share - a_other};
}

double RoundTo2(double v) { return std::round(v * 100.0) / 100.0; }

std::string ToString(PrivacyCostKind kind) {
  return kind == PrivacyCostKind::kFederated ? "federated" : "open_share";
}

nlohmann::json ToJson(const PrivacyCost& c) {
  return {{"kind", ToString(c.kind)},
          {"metric", c.metric},
          {"a_open_share", c.a_open_share},
          {c.kind == PrivacyCostKind::kFederated ? "a_federated" : "a_separate", c.a_other},
          {"cost", c.cost}};
}

}  // namespace fedxgb::eval
