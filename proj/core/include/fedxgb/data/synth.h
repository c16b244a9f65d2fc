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

#ifndef FEDXGB_DATA_SYNTH_H_
#define FEDXGB_DATA_SYNTH_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fedxgb/data/dataset.h"

namespace fedxgb::data {

// Summary statistics of one feature in one district.
struct FeatureStat {
  std::string symbol;
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct DistrictConfig {
  std::string name;
  int num_samples = 0;
  double positive_rate = 0.5;
  int64_t first_sample_id = 1;
  std::vector<FeatureStat> features;  // in WellFeatureSchema() order
};

struct SignalTerm {
  std::string symbol;
  double weight = 0.0;
};

// Parameters of the synthetic well generator.
//
// Each feature is drawn from a Beta distribution scaled to [min, max] whose
// mean matches the district mean and whose median is as close to the
// district median as the shape allows. Features with median == min < mean
// use a point mass at min plus a Beta tail. Draws are Latin-hypercube
// stratified and then rescaled about min so the sample mean matches.
//
// Labels come from a latent productivity
//   P = label_threshold * exp(score + noise - offset),
//   score = sum_k weight_k * (x_k - ref_mean_k) / ref_scale_k,
// where ref_mean/ref_scale are pooled over all districts. The offset is
// shared and calibrated to the pooled positive count; a district whose rate
// then misses its target by more than rate_tolerance gets its own offset at
// the nearest edge of the tolerance band.
struct SynthConfig {
  std::vector<DistrictConfig> districts;
  double label_threshold = 2e4;  // m3/day
  std::vector<SignalTerm> signal;
  double noise_sd = 0.4;
  double rate_tolerance = 0.03;
  // Spread choices: the source statistics carry no variances.
  double zero_mass = 0.6;
  double tail_concentration = 4.0;
  double max_concentration = 400.0;
  int max_calibration_iterations = 200;
  uint64_t seed = 0;

  // Throws ConfigError.
  void Validate() const;
};

// District A (72 wells, 34.72% positive) and district B (212 wells, 68.87%
// positive) with the published per-feature summary statistics.
SynthConfig DefaultSynthConfig();

nlohmann::json ToJson(const SynthConfig& config);
// Missing keys fall back to DefaultSynthConfig().
SynthConfig SynthConfigFromJson(const nlohmann::json& j);

// One labeled dataset per district, sample ids consecutive from each
// district's first_sample_id. Fully determined by the config.
std::vector<PartyDataset> GenerateDistricts(const SynthConfig& config);

// The two-district form. Throws ConfigError unless there are exactly two.
std::pair<PartyDataset, PartyDataset> SynthGenerate(const SynthConfig& config);

}  // namespace fedxgb::data

#endif  // FEDXGB_DATA_SYNTH_H_
