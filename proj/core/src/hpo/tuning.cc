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

#include "fedxgb/hpo/tuning.h"

#include "fedxgb/common/errors.h"
#include "fedxgb/common/rng.h"
#include "fedxgb/data/folds.h"
#include "fedxgb/eval/metrics.h"
#include "fedxgb/gbt/trainer.h"

namespace fedxgb::hpo {

std::string ToString(TuneMode mode) {
  switch (mode) {
    case TuneMode::kNone:
      return "none";
    case TuneMode::kSeparate:
      return "separate";
    case TuneMode::kCentralized:
      return "centralized";
    case TuneMode::kFederatedAggregated:
      return "federated_aggregated";
  }
  return "none";
}

TuneMode TuneModeFromString(const std::string& s) {
  if (s == "none") return TuneMode::kNone;
  if (s == "separate") return TuneMode::kSeparate;
  if (s == "centralized") return TuneMode::kCentralized;
  if (s == "federated_aggregated") return TuneMode::kFederatedAggregated;
  throw ConfigError("unknown tuning mode '" + s + "'");
}

Objective ValidationAucObjective(const data::PartyDataset& train,
                                 const data::PartyDataset& valid,
                                 const TuneSettings& settings) {
  return [&train, &valid, &settings](std::span<const double> x) {
    gbt::GbtParams p = settings.space.Apply(settings.base, x);
    gbt::BoostedEnsemble model = gbt::TrainCentralized(train, p, settings.train);
    return eval::AucRoc(*valid.labels, gbt::PredictProbabilities(model, valid));
  };
}

TunedParams TuneDirect(const data::PartyDataset& data, const TuneSettings& settings) {
  if (!data.has_labels()) throw DataError("tuning needs labeled data");
  const auto& labels = *data.labels;
  std::vector<size_t> rows(data.num_samples());
  for (size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  for (int attempt = 0; attempt <= settings.max_split_retries; ++attempt) {
    std::vector<size_t> train_rows, valid_rows;
    data::StratifiedHoldout(rows, labels, settings.valid_fraction,
                            DeriveSeed(settings.bo.seed, {0x7475, static_cast<uint64_t>(attempt)}),
                            &train_rows, &valid_rows);
    data::PartyDataset train = data.SelectRows(train_rows);
    data::PartyDataset valid = data.SelectRows(valid_rows);
    bool pos = false, neg = false;
    for (int y : *valid.labels) (y == 1 ? pos : neg) = true;
    bool tpos = false, tneg = false;
    for (int y : *train.labels) (y == 1 ? tpos : tneg) = true;
    if (!(pos && neg && tpos && tneg)) continue;
    return BoOptimize(ValidationAucObjective(train, valid, settings), settings.space,
                      settings.bo);
  }
  throw DataError("tuning: no validation split with both classes after " +
                  std::to_string(settings.max_split_retries + 1) + " attempts");
}

TunedParams TuneFederatedAggregated(std::span<const data::PartyDataset> parties,
                                    const TuneSettings& settings) {
  std::vector<PartyTuned> locals;
  for (size_t p = 0; p < parties.size(); ++p) {
    locals.push_back({TuneDirect(parties[p], settings),
                      static_cast<int64_t>(parties[p].num_samples())});
  }
  return AggregateParams(locals, settings.space);
}

}  // namespace fedxgb::hpo
