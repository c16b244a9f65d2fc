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

#include <benchmark/benchmark.h>
#include <gmpxx.h>

#include "fedxgb/phe/paillier.h"

namespace fedxgb::phe {
namespace {

const KeyPair& Key(int bits) {
  static std::map<int, KeyPair> keys;
  auto it = keys.find(bits);
  if (it == keys.end()) {
    KeyGenOptions o;
    o.key_bits = bits;
    o.seed = 1;
    it = keys.emplace(bits, GenerateKeyPair(o)).first;
  }
  return it->second;
}

void BM_Encrypt(benchmark::State& state) {
  Encryptor enc(Key(static_cast<int>(state.range(0))).public_key, 7);
  mpz_class m = 123456789;
  for (auto _ : state) benchmark::DoNotOptimize(enc.Encrypt(m));
}
BENCHMARK(BM_Encrypt)->Arg(512)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_Decrypt(benchmark::State& state) {
  const KeyPair& kp = Key(static_cast<int>(state.range(0)));
  Encryptor enc(kp.public_key, 7);
  const Ciphertext c = enc.Encrypt(mpz_class(42));
  for (auto _ : state) benchmark::DoNotOptimize(Decrypt(kp.private_key, kp.public_key, c));
}
BENCHMARK(BM_Decrypt)->Arg(512)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_HomomorphicAdd(benchmark::State& state) {
  const KeyPair& kp = Key(1024);
  Encryptor enc(kp.public_key, 7);
  const Ciphertext a = enc.Encrypt(mpz_class(1));
  const Ciphertext b = enc.Encrypt(mpz_class(2));
  for (auto _ : state) benchmark::DoNotOptimize(Add(kp.public_key, a, b));
}
BENCHMARK(BM_HomomorphicAdd)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace fedxgb::phe
