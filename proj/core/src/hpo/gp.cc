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

#include "fedxgb/hpo/gp.h"

#include <cmath>

#include <Eigen/Dense>

#include "fedxgb/common/errors.h"

namespace fedxgb::hpo {

GpSurrogate GpSurrogate::Fit(std::vector<std::vector<double>> x, std::vector<double> y,
                             const GpOptions& options) {
  if (x.empty() || x.size() != y.size()) {
    throw ConfigError("GP fit needs matching, nonempty observations");
  }
  for (const auto& p : x) {
    if (p.size() != x[0].size()) throw ConfigError("GP fit: dimension mismatch");
  }
  GpSurrogate gp;
  gp.x_ = std::move(x);
  gp.options_ = options;
  const Eigen::Index n = static_cast<Eigen::Index>(gp.x_.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      k(i, j) = k(j, i) = gp.Kernel(gp.x_[i], gp.x_[j]);
    }
  }
  Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  if (!(options.jitter >= 0.0)) throw ConfigError("GP jitter must be nonnegative");
  for (double jitter = options.jitter; jitter <= 1e-2 * (1 + 1e-9);
       jitter = jitter == 0.0 ? 1e-12 : jitter * 10.0) {
    Eigen::MatrixXd kj = k;
    kj.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(kj);
    if (llt.info() != Eigen::Success) continue;
    gp.jitter_ = jitter;
    Eigen::MatrixXd l = llt.matrixL();
    gp.chol_.assign(static_cast<size_t>(n * n), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) gp.chol_[i * n + j] = l(i, j);
    }
    Eigen::VectorXd alpha = llt.solve(yv);
    gp.alpha_.assign(alpha.data(), alpha.data() + n);
    return gp;
  }
  throw ConfigError("GP kernel matrix is not positive definite");
}

double GpSurrogate::Kernel(std::span<const double> a, std::span<const double> b) const {
  double d2 = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    d2 += d * d;
  }
  return std::exp(-d2 / (2.0 * options_.sigma * options_.sigma));
}

Posterior GpSurrogate::Predict(std::span<const double> x) const {
  const size_t n = x_.size();
  std::vector<double> ks(n);
  for (size_t i = 0; i < n; ++i) ks[i] = Kernel(x_[i], x);
  Posterior p;
  for (size_t i = 0; i < n; ++i) p.mean += ks[i] * alpha_[i];
  // v = L^-1 k*, variance = k(x,x) - v.v
  std::vector<double> v(n);
  double vv = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double s = ks[i];
    for (size_t j = 0; j < i; ++j) s -= chol_[i * n + j] * v[j];
    v[i] = s / chol_[i * n + i];
    vv += v[i] * v[i];
  }
  p.variance = std::max(0.0, Kernel(x, x) - vv);
  return p;
}

double ExpectedImprovement(const Posterior& p, double best, double xi) {
  const double improvement = p.mean - best - xi;
  const double sd = std::sqrt(std::max(0.0, p.variance));
  if (sd <= 0.0) return std::max(0.0, improvement);
  const double z = improvement / sd;
  const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
  return std::max(0.0, improvement * cdf + sd * pdf);
}

}  // namespace fedxgb::hpo
