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

#ifndef FEDXGB_HPO_AGGREGATE_H_
#define FEDXGB_HPO_AGGREGATE_H_

#include <cstdint>
#include <span>

#include "fedxgb/hpo/bayes_opt.h"
#include "fedxgb/hpo/search_space.h"

namespace fedxgb::hpo {

struct PartyTuned {
  TunedParams params;
  int64_t num_samples = 0;
};

// Sample-size weighted average of the parties' tuned vectors (`values`),
// clamped into bounds; integer dimensions are then rounded half away from
// zero. `raw` keeps the unrounded average. Throws ConfigError for no
// parties, mismatched dimensions or a zero total sample count.
TunedParams AggregateParams(std::span<const PartyTuned> locals, const SearchSpace& space);

}  // namespace fedxgb::hpo

#endif  // FEDXGB_HPO_AGGREGATE_H_
