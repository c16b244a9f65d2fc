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

#include "fedxgb/data/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <numeric>

#include <boost/math/special_functions/beta.hpp>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/rng.h"

namespace fedxgb::data {
namespace {

using nlohmann::json;

// {mean, median, min, max} in WellFeatureSchema() order.
struct Row {
  double mean, median, min, max;
};

constexpr Row kDistrictA[] = {
    {1570.38, 1554.00, 895.63, 2163.00},
    {17.23, 0.00, 0.00, 173.40},
    {243.23, 178.15, 0.00, 1036.00},
    {102.49, 72.30, 0.00, 417.00},
    {1019.13, 1057.25, 0.00, 1788.00},
    {127.79, 51.75, 0.00, 1362.00},
    {43.23, 0.00, 0.00, 912.00},
    {17.28, 0.00, 0.00, 836.00},
    {1262.36, 1328.25, 0.00, 1975.60},
    {3291330.10, 3291291.00, 3283866.00, 3297271.10},
    {18738860.64, 18739164.65, 18731627.60, 18747507.10},
    {3463.95, 3530.85, 2399.20, 4345.74},
    {4.42, 4.44, 3.57, 5.07},
    {3.93, 3.95, 2.46, 4.89},
    {1.60, 1.60, 1.30, 1.90},
    {79.23, 78.16, 65.45, 100.77},
    {35471.40, 34738.04, 18001.00, 60115.00},
    {2897.63, 2992.30, 223.40, 6181.68},
    {39897.46, 38964.49, 20013.58, 65022.80},
    {1385.30, 1254.15, 604.60, 2682.60},
    {68.05, 61.37, 40.84, 107.30},
    {474.61, 628.20, 9.18, 920.02},
    {1956.57, 1933.50, 1229.13, 2335.37},
    {1535.71, 1887.98, 187.98, 2196.65},
    {62.42, 24.15, 0.00, 968.00},
    {917.03, 773.37, 214.30, 1861.60},
    {405.84, 353.83, 108.90, 921.10},
    {6.47, 6.49, 5.18, 8.55},
    {76.74, 60.00, 28.00, 255.00},
    {45.22, 44.74, 30.63, 57.74},
    {76.93, 78.72, 57.73, 92.72},
    {20.13, 20.00, 10.00, 30.00},
};

constexpr Row kDistrictB[] = {
    {1468.05, 1500.00, 786.00, 2203.00},
    {28.63, 0.00, 0.00, 551.50},
    {386.18, 306.00, 0.00, 1748.00},
    {89.30, 50.00, 0.00, 666.00},
    {743.99, 726.00, 0.00, 1613.00},
    {152.25, 39.00, 0.00, 1303.00},
    {54.09, 0.00, 0.00, 757.00},
    {18.47, 0.00, 0.00, 471.00},
    {1111.93, 1216.60, 0.00, 1867.20},
    {3284124.81, 3284647.66, 3272450.10, 3296023.60},
    {18743263.60, 18743721.90, 18732341.10, 18751582.80},
    {2728.33, 2646.00, 1278.20, 5645.00},
    {4.71, 4.71, 2.93, 6.37},
    {3.59, 3.62, 2.00, 5.03},
    {1.42, 1.46, 0.98, 1.69},
    {72.65, 73.17, 40.02, 88.87},
    {31159.44, 31170.63, 3683.58, 57188.90},
    {2611.47, 2391.16, 129.40, 7914.90},
    {35173.27, 34940.60, 3840.13, 59781.90},
    {966.16, 988.81, 111.90, 1786.00},
    {50.27, 50.65, 31.22, 79.45},
    {20.06, 20.06, 12.54, 29.79},
    {1803.70, 1820.16, 1240.64, 2178.36},
    {706.50, 701.00, 489.51, 1009.85},
    {41.55, 38.80, 0.00, 241.90},
    {696.12, 709.20, 87.30, 1273.80},
    {228.49, 215.20, 19.60, 438.50},
    {7.44, 7.28, 4.81, 23.70},
    {48.37, 49.00, 5.00, 75.00},
    {35.69, 34.91, 16.08, 64.48},
    {74.07, 75.00, 36.00, 97.00},
    {18.67, 19.00, 2.00, 29.00},
};

template <size_t N>
std::vector<FeatureStat> MakeStats(const Row (&rows)[N]) {
  const auto& schema = WellFeatureSchema();
  std::vector<FeatureStat> out;
  for (size_t i = 0; i < N; ++i) {
    out.push_back({schema[i].symbol, rows[i].mean, rows[i].median, rows[i].min,
                   rows[i].max});
  }
  return out;
}

// Marginal on [0, 1]: with probability `zero_mass` exactly 0, otherwise
// Beta(a, b).
struct Marginal {
  bool constant = false;
  double zero_mass = 0.0;
  double a = 1.0;
  double b = 1.0;

  double Quantile(double u) const {
    if (constant) return 0.0;
    if (u < zero_mass) return 0.0;
    double v = (u - zero_mass) / (1.0 - zero_mass);
    v = std::clamp(v, 1e-12, 1.0 - 1e-12);
    return boost::math::ibeta_inv(a, b, v);
  }
};

double BetaMedian(double a, double b) { return boost::math::ibeta_inv(a, b, 0.5); }

Marginal FitMarginal(const FeatureStat& s, const SynthConfig& cfg) {
  Marginal m;
  double range = s.max - s.min;
  if (range <= 0.0) {
    m.constant = true;
    return m;
  }
  double mu = (s.mean - s.min) / range;
  double nu = (s.median - s.min) / range;
  mu = std::clamp(mu, 1e-6, 1.0 - 1e-6);
  if (nu <= 0.0 && s.mean > s.min) {
    m.zero_mass = std::min(cfg.zero_mass, 1.0 - mu / 0.95);
    double tail_mu = mu / (1.0 - m.zero_mass);
    m.a = tail_mu * cfg.tail_concentration;
    m.b = (1.0 - tail_mu) * cfg.tail_concentration;
    return m;
  }
  // Concentration search on a log grid, then golden-section refinement.
  auto err = [&](double log_k) {
    double k = std::exp(log_k);
    return std::abs(BetaMedian(mu * k, (1.0 - mu) * k) - nu);
  };
  double lo = std::log(0.5), hi = std::log(cfg.max_concentration);
  const int kGrid = 48;
  int best = 0;
  double best_err = err(lo);
  for (int i = 1; i <= kGrid; ++i) {
    double e = err(lo + (hi - lo) * i / kGrid);
    if (e < best_err) {
      best_err = e;
      best = i;
    }
  }
  double step = (hi - lo) / kGrid;
  double l = lo + step * std::max(best - 1, 0);
  double r = lo + step * std::min(best + 1, kGrid);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 40; ++it) {
    double c = r - phi * (r - l), d = l + phi * (r - l);
    if (err(c) < err(d)) {
      r = d;
    } else {
      l = c;
    }
  }
  double k = std::exp((l + r) / 2.0);
  m.a = mu * k;
  m.b = (1.0 - mu) * k;
  return m;
}

std::vector<size_t> Permutation(size_t n, KeyedStream& rng) {
  std::vector<size_t> p(n);
  std::iota(p.begin(), p.end(), size_t{0});
  for (size_t i = n; i > 1; --i) {
    size_t j = rng.Next() % i;
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

// Latin-hypercube draw of one feature column, rescaled about min so the
// sample mean matches the target without leaving [min, max].
std::vector<double> SampleFeature(const FeatureStat& s, const Marginal& m, size_t n,
                                  uint64_t key) {
  KeyedStream rng(key);
  std::vector<size_t> perm = Permutation(n, rng);
  std::vector<double> q(n);
  for (size_t i = 0; i < n; ++i) {
    double u = (static_cast<double>(perm[i]) + rng.NextUniform()) / n;
    q[i] = m.Quantile(u);
  }
  double range = s.max - s.min;
  if (range > 0.0) {
    double target = (s.mean - s.min) / range;
    for (int it = 0; it < 100; ++it) {
      double mean = std::accumulate(q.begin(), q.end(), 0.0) / n;
      if (mean <= 0.0 || std::abs(mean - target) <= 1e-12) break;
      double f = target / mean;
      for (double& v : q) v = std::min(1.0, v * f);
    }
  }
  std::vector<double> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = s.min + range * q[i];
  return x;
}

double NextNormal(KeyedStream& rng) {
  double u1 = rng.NextUniform();
  double u2 = rng.NextUniform();
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

void SynthConfig::Validate() const {
  if (districts.empty()) throw ConfigError("synth: no districts");
  const auto& schema = WellFeatureSchema();
  for (const auto& d : districts) {
    if (d.num_samples < 2) throw ConfigError("synth: district " + d.name + " too small");
    if (!(d.positive_rate > 0.0 && d.positive_rate < 1.0)) {
      throw ConfigError("synth: positive rate must be in (0,1) for " + d.name);
    }
    if (d.features.size() != schema.size()) {
      throw ConfigError("synth: district " + d.name + " must list all " +
                        std::to_string(schema.size()) + " features");
    }
    for (size_t i = 0; i < schema.size(); ++i) {
      const auto& f = d.features[i];
      if (f.symbol != schema[i].symbol) {
        throw ConfigError("synth: expected feature " + schema[i].symbol + ", got " +
                          f.symbol);
      }
      if (!(f.min <= f.median && f.median <= f.max && f.min <= f.mean &&
            f.mean <= f.max)) {
        throw ConfigError("synth: " + d.name + "/" + f.symbol +
                          " needs min <= median, mean <= max");
      }
    }
  }
  for (const auto& t : signal) {
    bool known = std::any_of(schema.begin(), schema.end(),
                             [&](const auto& f) { return f.symbol == t.symbol; });
    if (!known) throw ConfigError("synth: unknown signal feature " + t.symbol);
  }
  if (!(label_threshold > 0.0)) throw ConfigError("synth: label_threshold must be > 0");
  if (!(noise_sd >= 0.0)) throw ConfigError("synth: noise_sd must be >= 0");
  if (!(zero_mass >= 0.5 && zero_mass < 1.0)) {
    throw ConfigError("synth: zero_mass must be in [0.5, 1)");
  }
  if (!(tail_concentration > 0.0) || !(max_concentration > 0.5)) {
    throw ConfigError("synth: concentrations must be positive");
  }
  if (!(rate_tolerance >= 0.0 && rate_tolerance < 0.5)) {
    throw ConfigError("synth: rate_tolerance must be in [0, 0.5)");
  }
  if (max_calibration_iterations < 1) {
    throw ConfigError("synth: max_calibration_iterations must be >= 1");
  }
}

SynthConfig DefaultSynthConfig() {
  SynthConfig c;
  c.districts.push_back({"A", 72, 0.3472, 1, MakeStats(kDistrictA)});
  c.districts.push_back({"B", 212, 0.6887, 73, MakeStats(kDistrictB)});
  // Mostly features that are narrow in A and wide in B.
  c.signal = {{"G13", 0.7}, {"G12", -0.35}, {"O14", -0.35}, {"G16", -0.25},
              {"O15", 0.5}, {"O16", 0.5},   {"O12", 0.4},   {"G1", 0.35}};
  return c;
}

json ToJson(const SynthConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["label_threshold"] = c.label_threshold;
  j["noise_sd"] = c.noise_sd;
  j["rate_tolerance"] = c.rate_tolerance;
  j["spread_note"] =
      "zero_mass, tail_concentration and max_concentration are modelling "
      "choices: the district statistics carry no variances";
  j["zero_mass"] = c.zero_mass;
  j["tail_concentration"] = c.tail_concentration;
  j["max_concentration"] = c.max_concentration;
  j["max_calibration_iterations"] = c.max_calibration_iterations;
  j["signal"] = json::array();
  for (const auto& t : c.signal) j["signal"].push_back({{"symbol", t.symbol}, {"weight", t.weight}});
  j["districts"] = json::array();
  for (const auto& d : c.districts) {
    json jd = {{"name", d.name},
               {"num_samples", d.num_samples},
               {"positive_rate", d.positive_rate},
               {"first_sample_id", d.first_sample_id},
               {"features", json::array()}};
    for (const auto& f : d.features) {
      jd["features"].push_back({{"symbol", f.symbol},
                                {"mean", f.mean},
                                {"median", f.median},
                                {"min", f.min},
                                {"max", f.max}});
    }
    j["districts"].push_back(jd);
  }
  return j;
}

SynthConfig SynthConfigFromJson(const json& j) {
  SynthConfig c = DefaultSynthConfig();
  try {
    c.seed = j.value("seed", c.seed);
    c.label_threshold = j.value("label_threshold", c.label_threshold);
    c.noise_sd = j.value("noise_sd", c.noise_sd);
    c.rate_tolerance = j.value("rate_tolerance", c.rate_tolerance);
    c.zero_mass = j.value("zero_mass", c.zero_mass);
    c.tail_concentration = j.value("tail_concentration", c.tail_concentration);
    c.max_concentration = j.value("max_concentration", c.max_concentration);
    c.max_calibration_iterations =
        j.value("max_calibration_iterations", c.max_calibration_iterations);
    if (j.contains("signal")) {
      c.signal.clear();
      for (const auto& t : j.at("signal")) {
        c.signal.push_back({t.at("symbol").get<std::string>(), t.at("weight").get<double>()});
      }
    }
    if (j.contains("districts")) {
      std::vector<DistrictConfig> defaults = c.districts;
      c.districts.clear();
      for (size_t i = 0; i < j.at("districts").size(); ++i) {
        const json& jd = j.at("districts")[i];
        DistrictConfig d = i < defaults.size() ? defaults[i] : DistrictConfig{};
        d.name = jd.value("name", d.name);
        d.num_samples = jd.value("num_samples", d.num_samples);
        d.positive_rate = jd.value("positive_rate", d.positive_rate);
        d.first_sample_id = jd.value("first_sample_id", d.first_sample_id);
        if (jd.contains("features")) {
          d.features.clear();
          for (const auto& f : jd.at("features")) {
            d.features.push_back({f.at("symbol").get<std::string>(), f.at("mean").get<double>(),
                                  f.at("median").get<double>(), f.at("min").get<double>(),
                                  f.at("max").get<double>()});
          }
        }
        c.districts.push_back(d);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("synth config: ") + e.what());
  }
  c.Validate();
  return c;
}

std::vector<PartyDataset> GenerateDistricts(const SynthConfig& config) {
  config.Validate();
  const auto& schema = WellFeatureSchema();
  const size_t num_features = schema.size();

  std::vector<PartyDataset> out;
  for (size_t d = 0; d < config.districts.size(); ++d) {
    const DistrictConfig& dc = config.districts[d];
    const size_t n = static_cast<size_t>(dc.num_samples);
    PartyDataset ds;
    ds.party_id = dc.name;
    ds.features = schema;
    ds.x = FeatureMatrix(n, num_features);
    for (size_t i = 0; i < n; ++i) ds.sample_ids.push_back(dc.first_sample_id + i);
    for (size_t f = 0; f < num_features; ++f) {
      Marginal m = FitMarginal(dc.features[f], config);
      std::vector<double> col = SampleFeature(
          dc.features[f], m, n, DeriveSeed(config.seed, {0x66656174, d, f}));
      for (size_t i = 0; i < n; ++i) ds.x.at(i, f) = col[i];
    }
    out.push_back(std::move(ds));
  }

  // Signal columns are standardized with statistics pooled over all
  // districts so every district shares one feature-to-productivity relation.
  std::vector<std::pair<size_t, double>> terms;
  for (const auto& t : config.signal) {
    for (size_t f = 0; f < num_features; ++f) {
      if (schema[f].symbol == t.symbol) terms.emplace_back(f, t.weight);
    }
  }
  std::vector<double> ref_mean(terms.size(), 0.0), ref_sd(terms.size(), 0.0);
  size_t total = 0;
  for (const auto& ds : out) total += ds.num_samples();
  for (size_t k = 0; k < terms.size(); ++k) {
    double s = 0.0, ss = 0.0;
    for (const auto& ds : out) {
      for (size_t i = 0; i < ds.num_samples(); ++i) s += ds.x.at(i, terms[k].first);
    }
    ref_mean[k] = s / total;
    for (const auto& ds : out) {
      for (size_t i = 0; i < ds.num_samples(); ++i) {
        double v = ds.x.at(i, terms[k].first) - ref_mean[k];
        ss += v * v;
      }
    }
    ref_sd[k] = std::sqrt(ss / total);
    if (ref_sd[k] <= 0.0) ref_sd[k] = 1.0;
  }

  std::vector<std::vector<double>> latent(out.size());
  for (size_t d = 0; d < out.size(); ++d) {
    const PartyDataset& ds = out[d];
    KeyedStream noise_rng(DeriveSeed(config.seed, {0x6e6f6973, d}));
    latent[d].resize(ds.num_samples());
    for (size_t i = 0; i < ds.num_samples(); ++i) {
      double s = 0.0;
      for (size_t k = 0; k < terms.size(); ++k) {
        s += terms[k].second * (ds.x.at(i, terms[k].first) - ref_mean[k]) / ref_sd[k];
      }
      latent[d][i] = s + config.noise_sd * NextNormal(noise_rng);
    }
  }

  auto positives = [&](size_t d, double offset, std::vector<int>* labels) {
    long count = 0;
    for (size_t i = 0; i < latent[d].size(); ++i) {
      double productivity = config.label_threshold * std::exp(latent[d][i] - offset);
      int y = productivity >= config.label_threshold ? 1 : 0;
      count += y;
      if (labels != nullptr) (*labels)[i] = y;
    }
    return count;
  };
  // Smallest offset whose count is <= target; count is nonincreasing in the offset.
  auto calibrate = [&](const std::vector<size_t>& ds_idx, long target) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (size_t d : ds_idx) {
      auto [mn, mx] = std::minmax_element(latent[d].begin(), latent[d].end());
      lo = std::min(lo, *mn - 1.0);
      hi = std::max(hi, *mx + 1.0);
    }
    auto count = [&](double offset) {
      long c = 0;
      for (size_t d : ds_idx) c += positives(d, offset, nullptr);
      return c;
    };
    for (int it = 0; it < config.max_calibration_iterations; ++it) {
      double mid = 0.5 * (lo + hi);
      if (count(mid) > target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return hi;
  };

  std::vector<long> target(out.size()), slack(out.size());
  std::vector<size_t> all;
  long pooled_target = 0;
  for (size_t d = 0; d < out.size(); ++d) {
    const DistrictConfig& dc = config.districts[d];
    const long n = static_cast<long>(out[d].num_samples());
    target[d] = std::lround(dc.positive_rate * static_cast<double>(n));
    slack[d] = static_cast<long>(std::floor(config.rate_tolerance * static_cast<double>(n) + 1e-9));
    if (target[d] <= 0 || target[d] >= n) {
      throw ConfigError("synth: positive rate of district " + dc.name +
                        " is unreachable with " + std::to_string(n) + " samples");
    }
    pooled_target += target[d];
    all.push_back(d);
  }

  // One offset for every district; a district falling outside the tolerance
  // band is moved to the nearest edge of the band.
  const double shared = calibrate(all, pooled_target);
  for (size_t d = 0; d < out.size(); ++d) {
    PartyDataset& ds = out[d];
    const DistrictConfig& dc = config.districts[d];
    double offset = shared;
    long c = positives(d, offset, nullptr);
    long want = std::clamp(c, target[d] - slack[d], target[d] + slack[d]);
    if (c != want) {
      offset = calibrate({d}, want);
      c = positives(d, offset, nullptr);
    }
    if (std::labs(c - target[d]) > slack[d]) {
      throw ConfigError("synth: could not calibrate positive rate of district " + dc.name +
                        " within " + std::to_string(config.max_calibration_iterations) +
                        " iterations");
    }
    ds.labels.emplace(ds.num_samples());
    positives(d, offset, &*ds.labels);
    ds.Validate();
  }
  return out;
}

std::pair<PartyDataset, PartyDataset> SynthGenerate(const SynthConfig& config) {
  if (config.districts.size() != 2) {
    throw ConfigError("synth: expected exactly two districts");
  }
  std::vector<PartyDataset> v = GenerateDistricts(config);
  return {std::move(v[0]), std::move(v[1])};
}

}  // namespace fedxgb::data
