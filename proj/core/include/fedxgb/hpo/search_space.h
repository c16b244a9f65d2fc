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

#ifndef FEDXGB_HPO_SEARCH_SPACE_H_
#define FEDXGB_HPO_SEARCH_SPACE_H_

#include <span>
#include <string>
#include <vector>

#include "fedxgb/gbt/params.h"

namespace fedxgb::hpo {

enum class ParamKind { kContinuous, kInteger };

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::kContinuous;
  double low = 0.0;
  double high = 1.0;
};

// Box-bounded hyperparameter space. Points are vectors in native units with
// one entry per dimension.
class SearchSpace {
 public:
  SearchSpace() = default;
  explicit SearchSpace(std::vector<ParamSpec> dims);

  // learning_rate [0.01, 0.5], max_bin [8, 512], max_depth [0, 10],
  // min_child_weight [0, 10], n_estimators [20, 100], reg_alpha [0, 1],
  // reg_lambda [0, 1], subsample [0.01, 1].
  static SearchSpace BoosterDefault();

  size_t size() const { return dims_.size(); }
  const std::vector<ParamSpec>& dims() const { return dims_; }
  int IndexOf(const std::string& name) const;  // -1 if absent

  std::vector<double> ToUnit(std::span<const double> x) const;
  // Linear map from [0,1]^d; no rounding.
  std::vector<double> FromUnit(std::span<const double> u) const;
  // Clamps into bounds and rounds integer dimensions half away from zero.
  std::vector<double> Round(std::span<const double> x) const;
  bool Contains(std::span<const double> x) const;

  // Copies `base` and overwrites the dimensions named like GbtParams
  // fields with Round(x). Unknown names throw ConfigError.
  gbt::GbtParams Apply(const gbt::GbtParams& base, std::span<const double> x) const;
  std::vector<double> FromParams(const gbt::GbtParams& p) const;

 private:
  std::vector<ParamSpec> dims_;
};

}  // namespace fedxgb::hpo

#endif  // FEDXGB_HPO_SEARCH_SPACE_H_
