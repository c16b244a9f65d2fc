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

#ifndef FEDXGB_COMMON_RNG_H_
#define FEDXGB_COMMON_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace fedxgb {

// SplitMix64 finalizer. Bijective on 64-bit words.
uint64_t Mix64(uint64_t x);

// Derives an independent seed from a parent seed and a list of tags, e.g.
// DeriveSeed(seed, {tree, node, feature}). Order of tags matters.
uint64_t DeriveSeed(uint64_t seed, std::initializer_list<uint64_t> tags);

// Stable 64-bit FNV-1a hash of a byte string.
uint64_t Fnv1a64(std::string_view bytes);

// Counter-based generator: the i-th output is a pure function of (key, i).
// Used wherever protocol randomness must be reproducible from a key
// independently of call order (masks, per-row subsampling).
class KeyedStream {
 public:
  explicit KeyedStream(uint64_t key) : key_(key) {}

  uint64_t Next() { return Mix64(key_ ^ Mix64(++counter_)); }

  // Uniform double in [0, 1) with 53 bits of precision.
  double NextUniform() { return (Next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

// Uniform double in [0, 1) determined by (seed, tags).
double KeyedUniform(uint64_t seed, std::initializer_list<uint64_t> tags);

}  // namespace fedxgb

#endif  // FEDXGB_COMMON_RNG_H_
