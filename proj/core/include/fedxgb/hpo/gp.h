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

#ifndef FEDXGB_HPO_GP_H_
#define FEDXGB_HPO_GP_H_

#include <span>
#include <vector>

namespace fedxgb::hpo {

struct GpOptions {
  double sigma = 1.0;    // RBF bandwidth
  double jitter = 1e-6;  // added to the kernel diagonal
};

struct Posterior {
  double mean = 0.0;
  double variance = 0.0;
};

// Zero-mean Gaussian process with kernel exp(-|x - x'|^2 / (2 sigma^2)).
class GpSurrogate {
 public:
  // Throws ConfigError when there are no observations or dimensions differ.
  // If the Cholesky factorization fails the jitter is raised tenfold, up to
  // 1e-2.
  static GpSurrogate Fit(std::vector<std::vector<double>> x, std::vector<double> y,
                         const GpOptions& options = {});

  double Kernel(std::span<const double> a, std::span<const double> b) const;
  Posterior Predict(std::span<const double> x) const;

  size_t size() const { return x_.size(); }
  double jitter_used() const { return jitter_; }

 private:
  GpSurrogate() = default;

  std::vector<std::vector<double>> x_;
  GpOptions options_;
  double jitter_ = 0.0;
  std::vector<double> chol_;   // lower Cholesky factor, row-major
  std::vector<double> alpha_;  // (K + jitter I)^-1 y
};

// Expected improvement over `best` for maximization with offset xi.
double ExpectedImprovement(const Posterior& p, double best, double xi = 0.01);

}  // namespace fedxgb::hpo

#endif  // FEDXGB_HPO_GP_H_
