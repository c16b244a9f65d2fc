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

#ifndef FEDXGB_HPO_BAYES_OPT_H_
#define FEDXGB_HPO_BAYES_OPT_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fedxgb/hpo/gp.h"
#include "fedxgb/hpo/search_space.h"

namespace fedxgb::hpo {

enum class Provenance { kDirect, kAggregated };

struct TunedParams {
  std::vector<std::string> names;
  std::vector<double> values;  // rounded, as used for training
  std::vector<double> raw;     // before integer rounding
  double objective = 0.0;      // NaN when not evaluated
  Provenance provenance = Provenance::kDirect;
};

// Maximized. Receives a rounded point in native units. Exceptions count as
// a failed evaluation.
using Objective = std::function<double(std::span<const double> x)>;

struct BoOptions {
  int budget = 30;
  int initial_points = 5;
  int candidates = 1024;
  double xi = 0.01;
  GpOptions gp;
  uint64_t seed = 0;
};

struct BoTrace {
  std::vector<std::vector<double>> points;  // rounded native units
  std::vector<double> scores;               // -inf for failures
};

// GP/EI Bayesian optimization. The first `initial_points` points are a
// randomly shifted Halton sequence; each later point maximizes EI over
// `candidates` seeded random points of the unit cube. Scores are
// standardized before fitting and failed scores take the worst finite
// value. Returns the best observed point. Throws ConfigError when budget <
// initial_points.
TunedParams BoOptimize(const Objective& objective, const SearchSpace& space,
                       const BoOptions& options, BoTrace* trace = nullptr);

// i-th point (from 1) of the Halton sequence in `dims` dimensions.
std::vector<double> Halton(int index, size_t dims);

std::string ToString(Provenance p);
nlohmann::json ToJson(const TunedParams& t);
TunedParams TunedParamsFromJson(const nlohmann::json& j);

}  // namespace fedxgb::hpo

#endif  // FEDXGB_HPO_BAYES_OPT_H_
