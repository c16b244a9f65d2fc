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

#include "fedxgb/hpo/search_space.h"

#include <algorithm>
#include <cmath>

#include "fedxgb/common/errors.h"

namespace fedxgb::hpo {

SearchSpace::SearchSpace(std::vector<ParamSpec> dims) : dims_(std::move(dims)) {
  for (const auto& d : dims_) {
    if (!(d.low <= d.high)) throw ConfigError("search space: bad bounds for " + d.name);
  }
}

SearchSpace SearchSpace::BoosterDefault() {
  using K = ParamKind;
  return SearchSpace({{"learning_rate", K::kContinuous, 0.01, 0.5},
                      {"max_bin", K::kInteger, 8, 512},
                      {"max_depth", K::kInteger, 0, 10},
                      {"min_child_weight", K::kContinuous, 0, 10},
                      {"n_estimators", K::kInteger, 20, 100},
                      {"reg_alpha", K::kContinuous, 0, 1},
                      {"reg_lambda", K::kContinuous, 0, 1},
                      {"subsample", K::kContinuous, 0.01, 1}});
}

int SearchSpace::IndexOf(const std::string& name) const {
  for (size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<double> SearchSpace::ToUnit(std::span<const double> x) const {
  std::vector<double> u(dims_.size());
  for (size_t i = 0; i < dims_.size(); ++i) {
    double w = dims_[i].high - dims_[i].low;
    u[i] = w > 0.0 ? (x[i] - dims_[i].low) / w : 0.0;
  }
  return u;
}

std::vector<double> SearchSpace::FromUnit(std::span<const double> u) const {
  std::vector<double> x(dims_.size());
  for (size_t i = 0; i < dims_.size(); ++i) {
    x[i] = dims_[i].low + (dims_[i].high - dims_[i].low) * u[i];
  }
  return x;
}

std::vector<double> SearchSpace::Round(std::span<const double> x) const {
  if (x.size() != dims_.size()) throw ConfigError("search space: dimension mismatch");
  std::vector<double> out(dims_.size());
  for (size_t i = 0; i < dims_.size(); ++i) {
    double v = std::clamp(x[i], dims_[i].low, dims_[i].high);
    if (dims_[i].kind == ParamKind::kInteger) v = std::round(v);
    out[i] = v;
  }
  return out;
}

bool SearchSpace::Contains(std::span<const double> x) const {
  if (x.size() != dims_.size()) return false;
  for (size_t i = 0; i < dims_.size(); ++i) {
    if (!(x[i] >= dims_[i].low && x[i] <= dims_[i].high)) return false;
    if (dims_[i].kind == ParamKind::kInteger && x[i] != std::round(x[i])) return false;
  }
  return true;
}

gbt::GbtParams SearchSpace::Apply(const gbt::GbtParams& base, std::span<const double> x) const {
  std::vector<double> v = Round(x);
  gbt::GbtParams p = base;
  for (size_t i = 0; i < dims_.size(); ++i) {
    const std::string& n = dims_[i].name;
    if (n == "learning_rate") {
      p.learning_rate = v[i];
    } else if (n == "max_bin") {
      p.max_bin = static_cast<int>(v[i]);
    } else if (n == "max_depth") {
      p.max_depth = static_cast<int>(v[i]);
    } else if (n == "min_child_weight") {
      p.min_child_weight = v[i];
    } else if (n == "n_estimators") {
      p.n_estimators = static_cast<int>(v[i]);
    } else if (n == "reg_alpha") {
      p.reg_alpha = v[i];
    } else if (n == "reg_lambda") {
      p.reg_lambda = v[i];
    } else if (n == "subsample") {
      p.subsample = v[i];
    } else if (n == "gamma") {
      p.gamma = v[i];
    } else {
      throw ConfigError("search space: unknown booster parameter " + n);
    }
  }
  return p;
}

std::vector<double> SearchSpace::FromParams(const gbt::GbtParams& p) const {
  std::vector<double> x;
  for (const auto& d : dims_) {
    const std::string& n = d.name;
    if (n == "learning_rate") {
      x.push_back(p.learning_rate);
    } else if (n == "max_bin") {
      x.push_back(p.max_bin);
    } else if (n == "max_depth") {
      x.push_back(p.max_depth);
    } else if (n == "min_child_weight") {
      x.push_back(p.min_child_weight);
    } else if (n == "n_estimators") {
      x.push_back(p.n_estimators);
    } else if (n == "reg_alpha") {
      x.push_back(p.reg_alpha);
    } else if (n == "reg_lambda") {
      x.push_back(p.reg_lambda);
    } else if (n == "subsample") {
      x.push_back(p.subsample);
    } else if (n == "gamma") {
      x.push_back(p.gamma);
    } else {
      throw ConfigError("search space: unknown booster parameter " + n);
    }
  }
  return x;
}

}  // namespace fedxgb::hpo
