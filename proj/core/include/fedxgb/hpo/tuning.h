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

#ifndef FEDXGB_HPO_TUNING_H_
#define FEDXGB_HPO_TUNING_H_

#include <cstdint>
#include <span>
#include <string>

#include "fedxgb/data/dataset.h"
#include "fedxgb/gbt/params.h"
#include "fedxgb/hpo/aggregate.h"
#include "fedxgb/hpo/bayes_opt.h"
#include "fedxgb/hpo/search_space.h"

namespace fedxgb::hpo {

enum class TuneMode { kNone, kSeparate, kCentralized, kFederatedAggregated };

std::string ToString(TuneMode mode);
TuneMode TuneModeFromString(const std::string& s);

struct TuneSettings {
  SearchSpace space = SearchSpace::BoosterDefault();
  gbt::GbtParams base;
  gbt::TrainOptions train;
  BoOptions bo;
  double valid_fraction = 0.10;
  int max_split_retries = 16;
};

// Validation AUC of a model trained on `train` with Apply(base, x).
Objective ValidationAucObjective(const data::PartyDataset& train,
                                 const data::PartyDataset& valid,
                                 const TuneSettings& settings);

// Splits `data` into a stratified train/validation pair (seeded by
// settings.bo.seed, advanced on single-class validation sets) and runs BO on
// the validation AUC. Used for separate and centralized tuning.
TunedParams TuneDirect(const data::PartyDataset& data, const TuneSettings& settings);

// Each party tunes on its own data only, with the same settings, then the
// results are averaged with AggregateParams weighted by party size.
TunedParams TuneFederatedAggregated(std::span<const data::PartyDataset> parties,
                                    const TuneSettings& settings);

}  // namespace fedxgb::hpo

#endif  // FEDXGB_HPO_TUNING_H_
