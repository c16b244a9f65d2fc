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

#ifndef FEDXGB_GBT_TRAINER_H_
#define FEDXGB_GBT_TRAINER_H_

#include <cstdint>
#include <vector>

#include "fedxgb/data/dataset.h"
#include "fedxgb/gbt/params.h"
#include "fedxgb/gbt/tree.h"

namespace fedxgb::gbt {

// True if `sample_id` is in the row sample of tree `tree`. A pure function of
// (seed, tree, sample id), so parties holding disjoint rows agree with a
// centralized run on their union.
bool InBag(uint64_t seed, int tree, int64_t sample_id, double subsample);

// Trains a boosted ensemble on a labeled dataset. Feature ids in the model
// are the dataset's column indices. Throws DataError for an empty or
// unlabeled dataset.
BoostedEnsemble TrainCentralized(const data::PartyDataset& data,
                                 const GbtParams& params,
                                 const TrainOptions& options = {});

// Probability of the positive class for every row of `data`.
std::vector<double> PredictProbabilities(const BoostedEnsemble& model,
                                         const data::PartyDataset& data);

// Mean logistic loss of `model` on labeled `data`.
double MeanLogLoss(const BoostedEnsemble& model, const data::PartyDataset& data);

}  // namespace fedxgb::gbt

#endif  // FEDXGB_GBT_TRAINER_H_
