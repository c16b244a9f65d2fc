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

#ifndef FEDXGB_EVAL_PRIVACY_COST_H_
#define FEDXGB_EVAL_PRIVACY_COST_H_

#include <string>

#include <nlohmann/json.hpp>

namespace fedxgb::eval {

// kFederated: cost of keeping data private under federation,
//   open_share - federated.
// kOpenShare: gain given up by not sharing at all,
//   open_share - separate.
enum class PrivacyCostKind { kFederated, kOpenShare };

struct PrivacyCost {
  PrivacyCostKind kind = PrivacyCostKind::kFederated;
  std::string metric;
  double a_open_share = 0.0;
  double a_other = 0.0;  // federated or separate score
  double cost = 0.0;
};

PrivacyCost ComputePrivacyCost(PrivacyCostKind kind, const std::string& metric,
                               double a_open_share, double a_other);

// Rounds to 2 decimals (for percentage-point display).
double RoundTo2(double v);

std::string ToString(PrivacyCostKind kind);
nlohmann::json ToJson(const PrivacyCost& c);

}  // namespace fedxgb::eval

#endif  // FEDXGB_EVAL_PRIVACY_COST_H_
