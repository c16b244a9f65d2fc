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

#ifndef FEDXGB_FED_SECAGG_H_
#define FEDXGB_FED_SECAGG_H_

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fedxgb/gbt/histogram.h"
#include "fedxgb/phe/paillier.h"

namespace fedxgb::fed {

enum class SecAggMode {
  kPaillierMask,  // masked fixed-point integers encrypted under the server key
  kMaskOnly,      // masked 64-bit wrapping integers
};

std::string ToString(SecAggMode mode);  // "paillier" / "mask"
SecAggMode SecAggModeFromString(const std::string& s);

// One shared seed per unordered client pair (i < j).
using PairSeeds = std::map<std::pair<int, int>, uint64_t>;
PairSeeds MakePairSeeds(uint64_t seed, int num_clients);

// Identifies one masked value: (round nonce, node, slot, component) with
// component 0 for G and 1 for H.
struct MaskSlot {
  uint64_t nonce = 0;
  int node = 0;
  size_t slot = 0;
  int component = 0;
};

// Zero-sum pairwise masks of one client: the sum over j > i of r_ij minus
// the sum over j < i of r_ji, where r_ij is drawn from the pair's seed and
// the slot key. Summed over all clients the masks cancel exactly.
class PairwiseMasker {
 public:
  PairwiseMasker(int client_index, int num_clients, const PairSeeds& seeds);

  uint64_t MaskU64(const MaskSlot& s) const;            // modulo 2^64
  mpz_class MaskModN(const MaskSlot& s, const mpz_class& n) const;  // in [0, n)

 private:
  int index_;
  std::vector<std::pair<uint64_t, int>> pairs_;  // (seed, +1 / -1)
};

// Uniform value in [0, n) from a pair seed and slot key (bits(n) + 64
// random bits reduced mod n).
mpz_class PairMaskModN(uint64_t pair_seed, const MaskSlot& s, const mpz_class& n);
uint64_t PairMaskU64(uint64_t pair_seed, const MaskSlot& s);

// A client's masked node histogram. Slots are the feature x bin grid in
// row-major order followed by one slot for the node totals. Counts are in
// clear.
struct MaskedHistogram {
  int node = 0;
  std::vector<int64_t> counts;  // per slot, totals last
  std::vector<uint64_t> g_u64, h_u64;        // mask-only mode
  std::vector<phe::Ciphertext> g_enc, h_enc;  // Paillier mode

  size_t num_slots() const { return counts.size(); }
};

nlohmann::json ToJson(const MaskedHistogram& m, SecAggMode mode);
MaskedHistogram MaskedHistogramFromJson(const nlohmann::json& j, SecAggMode mode);

// Masks (and in Paillier mode encrypts) a client's local node histogram.
// Throws EncodingError if a slot value does not fit the plaintext space.
MaskedHistogram MaskHistogram(const gbt::GradHistogram& hist, int node, uint64_t nonce,
                              const PairwiseMasker& masker, SecAggMode mode,
                              const phe::PublicKey* pk, phe::Encryptor* encryptor);

// Server side: sums the clients' masked histograms slot-wise (homomorphically
// in Paillier mode), decrypts and returns the plaintext global histogram.
// Throws ProtocolError on shape mismatch or a missing key.
gbt::GradHistogram AggregateMasked(std::span<const MaskedHistogram> parts,
                                   const std::vector<int>& feature_ids, int num_bins,
                                   SecAggMode mode, const phe::KeyPair* key);

}  // namespace fedxgb::fed

#endif  // FEDXGB_FED_SECAGG_H_
