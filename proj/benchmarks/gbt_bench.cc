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

#include <numeric>
#include <random>

#include <benchmark/benchmark.h>

#include "fedxgb/common/fixed_point.h"
#include "fedxgb/gbt/histogram.h"
#include "fedxgb/gbt/split.h"
#include "fedxgb/gbt/trainer.h"
#include "fedxgb_testing/synthetic.h"

namespace fedxgb::gbt {
namespace {

struct Inputs {
  BinnedRows binned;
  std::vector<QuantizedGrad> grads;
  std::vector<int> rows;
  std::vector<int> ids;
};

Inputs MakeInputs(int n, int features, int bins) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> bin(0, bins - 1);
  std::uniform_real_distribution<double> g(-1.0, 1.0);
  Inputs in;
  in.binned.num_features = features;
  in.binned.bins.resize(static_cast<size_t>(n) * features);
  for (int& b : in.binned.bins) b = bin(rng);
  for (int i = 0; i < n; ++i) in.grads.push_back({QuantizeGrad(g(rng)), QuantizeGrad(0.25)});
  in.rows.resize(n);
  std::iota(in.rows.begin(), in.rows.end(), 0);
  in.ids.resize(features);
  std::iota(in.ids.begin(), in.ids.end(), 0);
  return in;
}

void BM_BuildHistogram(benchmark::State& state) {
  const Inputs in = MakeInputs(static_cast<int>(state.range(0)), 32, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildHistogram(in.binned, in.grads, in.rows, in.ids, 32));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildHistogram)->Arg(284)->Arg(10000);

void BM_FindBestSplit(benchmark::State& state) {
  const int bins = static_cast<int>(state.range(0));
  const Inputs in = MakeInputs(2000, 32, bins);
  const GradHistogram h = BuildHistogram(in.binned, in.grads, in.rows, in.ids, bins);
  GbtParams p;
  for (auto _ : state) benchmark::DoNotOptimize(FindBestSplit(h, p));
}
BENCHMARK(BM_FindBestSplit)->Arg(32)->Arg(256);

void BM_TrainCentralized(benchmark::State& state) {
  const data::PartyDataset d = testing::RandomDataset(3, 284, 32);
  GbtParams p;
  for (auto _ : state) benchmark::DoNotOptimize(TrainCentralized(d, p));
}
BENCHMARK(BM_TrainCentralized)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace fedxgb::gbt
