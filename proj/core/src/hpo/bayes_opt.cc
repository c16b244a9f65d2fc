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

#include "fedxgb/hpo/bayes_opt.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/rng.h"

namespace fedxgb::hpo {
namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                           37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79};

double RadicalInverse(int index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

// Standardized copy of `scores` with failures set to the worst finite value.
std::vector<double> FitTargets(const std::vector<double>& scores) {
  double worst = std::numeric_limits<double>::infinity();
  for (double s : scores) {
    if (std::isfinite(s)) worst = std::min(worst, s);
  }
  if (!std::isfinite(worst)) worst = 0.0;
  std::vector<double> y;
  for (double s : scores) y.push_back(std::isfinite(s) ? s : worst);
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= y.size();
  double var = 0.0;
  for (double v : y) var += (v - mean) * (v - mean);
  double sd = y.size() > 1 ? std::sqrt(var / (y.size() - 1)) : 0.0;
  if (!(sd > 0.0)) sd = 1.0;
  for (double& v : y) v = (v - mean) / sd;
  return y;
}

}  // namespace

std::vector<double> Halton(int index, size_t dims) {
  if (dims > std::size(kPrimes)) throw ConfigError("Halton: too many dimensions");
  std::vector<double> u(dims);
  for (size_t d = 0; d < dims; ++d) u[d] = RadicalInverse(index, kPrimes[d]);
  return u;
}

TunedParams BoOptimize(const Objective& objective, const SearchSpace& space,
                       const BoOptions& options, BoTrace* trace) {
  if (space.size() == 0) throw ConfigError("BO: empty search space");
  if (options.initial_points < 1 || options.budget < options.initial_points) {
    throw ConfigError("BO: budget must be >= the initial design size (" +
                      std::to_string(options.initial_points) + ")");
  }
  if (options.candidates < 1) throw ConfigError("BO: need at least one candidate");
  const size_t dims = space.size();

  std::vector<double> shift(dims);
  for (size_t d = 0; d < dims; ++d) shift[d] = KeyedUniform(options.seed, {0x68616c74, d});

  std::vector<std::vector<double>> points;  // rounded native units
  std::vector<std::vector<double>> units;   // GP inputs
  std::vector<double> scores;

  auto evaluate = [&](const std::vector<double>& u) {
    std::vector<double> x = space.Round(space.FromUnit(u));
    double s;
    try {
      s = objective(x);
      if (std::isnan(s)) s = -std::numeric_limits<double>::infinity();
    } catch (const std::exception&) {
      s = -std::numeric_limits<double>::infinity();
    }
    units.push_back(space.ToUnit(x));
    points.push_back(std::move(x));
    scores.push_back(s);
  };

  for (int i = 1; i <= options.initial_points; ++i) {
    std::vector<double> u = Halton(i, dims);
    for (size_t d = 0; d < dims; ++d) u[d] = std::fmod(u[d] + shift[d], 1.0);
    evaluate(u);
  }

  for (int step = options.initial_points; step < options.budget; ++step) {
    std::vector<double> y = FitTargets(scores);
    GpSurrogate gp = GpSurrogate::Fit(units, y, options.gp);
    const double best = *std::max_element(y.begin(), y.end());
    KeyedStream rng(DeriveSeed(options.seed, {0x63616e64, static_cast<uint64_t>(step)}));
    std::vector<double> cand(dims), best_u;
    double best_ei = -1.0;
    for (int c = 0; c < options.candidates; ++c) {
      for (size_t d = 0; d < dims; ++d) cand[d] = rng.NextUniform();
      double ei = ExpectedImprovement(gp.Predict(cand), best, options.xi);
      if (ei > best_ei) {
        best_ei = ei;
        best_u = cand;
      }
    }
    evaluate(best_u);
  }

  size_t best_i = 0;
  for (size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best_i]) best_i = i;
  }
  if (trace != nullptr) {
    trace->points = points;
    trace->scores = scores;
  }
  TunedParams out;
  for (const auto& d : space.dims()) out.names.push_back(d.name);
  out.values = points[best_i];
  out.raw = points[best_i];
  out.objective = scores[best_i];
  out.provenance = Provenance::kDirect;
  return out;
}

std::string ToString(Provenance p) {
  return p == Provenance::kDirect ? "direct" : "aggregated";
}

nlohmann::json ToJson(const TunedParams& t) {
  nlohmann::json j;
  j["provenance"] = ToString(t.provenance);
  j["objective"] = std::isfinite(t.objective) ? nlohmann::json(t.objective) : nlohmann::json();
  j["params"] = nlohmann::json::object();
  j["raw"] = nlohmann::json::object();
  for (size_t i = 0; i < t.names.size(); ++i) {
    j["params"][t.names[i]] = t.values[i];
    j["raw"][t.names[i]] = t.raw[i];
  }
  return j;
}

TunedParams TunedParamsFromJson(const nlohmann::json& j) {
  TunedParams t;
  try {
    t.provenance =
        j.at("provenance").get<std::string>() == "direct" ? Provenance::kDirect
                                                          : Provenance::kAggregated;
    t.objective = j.at("objective").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                              : j.at("objective").get<double>();
    for (const auto& [name, value] : j.at("params").items()) {
      t.names.push_back(name);
      t.values.push_back(value.get<double>());
      t.raw.push_back(j.contains("raw") ? j.at("raw").at(name).get<double>()
                                        : value.get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("tuned params: ") + e.what());
  }
  return t;
}

}  // namespace fedxgb::hpo
