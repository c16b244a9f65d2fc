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

#include "fedxgb/hpo/aggregate.h"

#include <algorithm>
#include <limits>

#include "fedxgb/common/errors.h"

namespace fedxgb::hpo {

TunedParams AggregateParams(std::span<const PartyTuned> locals, const SearchSpace& space) {
  if (locals.empty()) throw ConfigError("aggregate: no parties");
  int64_t total = 0;
  for (const auto& p : locals) {
    if (p.num_samples < 0) throw ConfigError("aggregate: negative sample count");
    if (p.params.values.size() != space.size()) {
      throw ConfigError("aggregate: parameter vector does not match the search space");
    }
    total += p.num_samples;
  }
  if (total == 0) throw ConfigError("aggregate: total sample count is zero");

  TunedParams out;
  for (const auto& d : space.dims()) out.names.push_back(d.name);
  out.raw.assign(space.size(), 0.0);
  for (const auto& p : locals) {
    const double w = static_cast<double>(p.num_samples) / static_cast<double>(total);
    for (size_t i = 0; i < space.size(); ++i) out.raw[i] += w * p.params.values[i];
  }
  for (size_t i = 0; i < space.size(); ++i) {
    out.raw[i] = std::clamp(out.raw[i], space.dims()[i].low, space.dims()[i].high);
  }
  out.values = space.Round(out.raw);
  out.objective = std::numeric_limits<double>::quiet_NaN();
  out.provenance = Provenance::kAggregated;
  return out;
}

}  // namespace fedxgb::hpo
