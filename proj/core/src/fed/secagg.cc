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

#include "fedxgb/fed/secagg.h"

#include <limits>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/rng.h"
#include "fedxgb/phe/codec.h"
#include "fedxgb/phe/serialization.h"

namespace fedxgb::fed {
namespace {

uint64_t SlotKey(uint64_t pair_seed, const MaskSlot& s) {
  return DeriveSeed(pair_seed, {s.nonce, static_cast<uint64_t>(s.node), s.slot,
                                static_cast<uint64_t>(s.component)});
}

std::vector<std::string> HexList(const std::vector<phe::Ciphertext>& cs) {
  std::vector<std::string> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(phe::ToHex(c.value));
  return out;
}

std::vector<phe::Ciphertext> CipherList(const nlohmann::json& j) {
  std::vector<phe::Ciphertext> out;
  for (const auto& s : j) out.push_back({phe::FromHex(s.get<std::string>())});
  return out;
}

}  // namespace

std::string ToString(SecAggMode mode) {
  return mode == SecAggMode::kPaillierMask ? "paillier" : "mask";
}

SecAggMode SecAggModeFromString(const std::string& s) {
  if (s == "paillier") return SecAggMode::kPaillierMask;
  if (s == "mask") return SecAggMode::kMaskOnly;
  throw ConfigError("unknown secure aggregation mode '" + s + "'");
}

PairSeeds MakePairSeeds(uint64_t seed, int num_clients) {
  PairSeeds out;
  for (int i = 0; i < num_clients; ++i) {
    for (int j = i + 1; j < num_clients; ++j) {
      out[{i, j}] = DeriveSeed(seed, {0x70616972, static_cast<uint64_t>(i),
                                      static_cast<uint64_t>(j)});
    }
  }
  return out;
}

uint64_t PairMaskU64(uint64_t pair_seed, const MaskSlot& s) {
  return KeyedStream(SlotKey(pair_seed, s)).Next();
}

mpz_class PairMaskModN(uint64_t pair_seed, const MaskSlot& s, const mpz_class& n) {
  KeyedStream rng(SlotKey(pair_seed, s));
  const size_t words = (mpz_sizeinbase(n.get_mpz_t(), 2) + 64 + 63) / 64;
  mpz_class r = 0;
  for (size_t w = 0; w < words; ++w) {
    r <<= 64;
    uint64_t v = rng.Next();
    mpz_class part;
    mpz_import(part.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    r += part;
  }
  mpz_class out;
  mpz_mod(out.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
  return out;
}

PairwiseMasker::PairwiseMasker(int client_index, int num_clients, const PairSeeds& seeds)
    : index_(client_index) {
  for (int j = 0; j < num_clients; ++j) {
    if (j == client_index) continue;
    auto key = j > client_index ? std::make_pair(client_index, j) : std::make_pair(j, client_index);
    auto it = seeds.find(key);
    if (it == seeds.end()) {
      throw ConfigError("no shared mask seed for clients " + std::to_string(key.first) +
                        " and " + std::to_string(key.second));
    }
    pairs_.emplace_back(it->second, j > client_index ? +1 : -1);
  }
}

uint64_t PairwiseMasker::MaskU64(const MaskSlot& s) const {
  uint64_t m = 0;
  for (const auto& [seed, sign] : pairs_) {
    uint64_t r = PairMaskU64(seed, s);
    m = sign > 0 ? m + r : m - r;
  }
  return m;
}

mpz_class PairwiseMasker::MaskModN(const MaskSlot& s, const mpz_class& n) const {
  mpz_class m = 0;
  for (const auto& [seed, sign] : pairs_) {
    mpz_class r = PairMaskModN(seed, s, n);
    if (sign > 0) {
      m += r;
    } else {
      m -= r;
    }
  }
  mpz_class out;
  mpz_mod(out.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
  return out;
}

nlohmann::json ToJson(const MaskedHistogram& m, SecAggMode mode) {
  nlohmann::json j = {{"node", m.node}, {"count", m.counts}};
  if (mode == SecAggMode::kMaskOnly) {
    j["g"] = m.g_u64;
    j["h"] = m.h_u64;
  } else {
    j["g"] = HexList(m.g_enc);
    j["h"] = HexList(m.h_enc);
  }
  return j;
}

MaskedHistogram MaskedHistogramFromJson(const nlohmann::json& j, SecAggMode mode) {
  MaskedHistogram m;
  try {
    m.node = j.at("node").get<int>();
    m.counts = j.at("count").get<std::vector<int64_t>>();
    if (mode == SecAggMode::kMaskOnly) {
      m.g_u64 = j.at("g").get<std::vector<uint64_t>>();
      m.h_u64 = j.at("h").get<std::vector<uint64_t>>();
      if (m.g_u64.size() != m.counts.size() || m.h_u64.size() != m.counts.size()) {
        throw ProtocolError("masked histogram slot count mismatch");
      }
    } else {
      m.g_enc = CipherList(j.at("g"));
      m.h_enc = CipherList(j.at("h"));
      if (m.g_enc.size() != m.counts.size() || m.h_enc.size() != m.counts.size()) {
        throw ProtocolError("masked histogram slot count mismatch");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed masked histogram: ") + e.what());
  }
  return m;
}

MaskedHistogram MaskHistogram(const gbt::GradHistogram& hist, int node, uint64_t nonce,
                              const PairwiseMasker& masker, SecAggMode mode,
                              const phe::PublicKey* pk, phe::Encryptor* encryptor) {
  const auto slots = hist.slots();
  const size_t n_slots = slots.size() + 1;
  MaskedHistogram out;
  out.node = node;
  out.counts.reserve(n_slots);
  for (const auto& s : slots) out.counts.push_back(s.count);
  out.counts.push_back(hist.total().count);
  auto value = [&](size_t i, int component) {
    const gbt::HistSlot& s = i < slots.size() ? slots[i] : hist.total();
    return component == 0 ? s.g : s.h;
  };
  if (mode == SecAggMode::kMaskOnly) {
    for (int c = 0; c < 2; ++c) {
      auto& dst = c == 0 ? out.g_u64 : out.h_u64;
      dst.reserve(n_slots);
      for (size_t i = 0; i < n_slots; ++i) {
        uint64_t v = static_cast<uint64_t>(value(i, c));
        dst.push_back(v + masker.MaskU64({nonce, node, i, c}));
      }
    }
    return out;
  }
  if (pk == nullptr || encryptor == nullptr) {
    throw ProtocolError("Paillier aggregation needs the server public key");
  }
  phe::FixedPointCodec codec(*pk);
  for (int c = 0; c < 2; ++c) {
    auto& dst = c == 0 ? out.g_enc : out.h_enc;
    dst.reserve(n_slots);
    for (size_t i = 0; i < n_slots; ++i) {
      mpz_class m = codec.EncodeInteger(value(i, c)) + masker.MaskModN({nonce, node, i, c}, pk->n);
      if (m >= pk->n) m -= pk->n;
      dst.push_back(encryptor->Encrypt(m));
    }
  }
  return out;
}

gbt::GradHistogram AggregateMasked(std::span<const MaskedHistogram> parts,
                                   const std::vector<int>& feature_ids, int num_bins,
                                   SecAggMode mode, const phe::KeyPair* key) {
  gbt::GradHistogram out(feature_ids, num_bins);
  const size_t grid = feature_ids.size() * static_cast<size_t>(num_bins);
  const size_t n_slots = grid + 1;
  if (parts.empty()) throw ProtocolError("no histograms to aggregate");
  for (const auto& p : parts) {
    if (p.num_slots() != n_slots) {
      throw ProtocolError("histogram of node " + std::to_string(p.node) + " has " +
                          std::to_string(p.num_slots()) + " slots, expected " +
                          std::to_string(n_slots));
    }
  }
  auto mutable_slots = out.mutable_slots();
  auto slot = [&](size_t i) -> gbt::HistSlot& {
    return i < grid ? mutable_slots[i] : out.total();
  };
  for (size_t i = 0; i < n_slots; ++i) {
    int64_t count = 0;
    for (const auto& p : parts) count += p.counts[i];
    slot(i).count = count;
  }
  if (mode == SecAggMode::kMaskOnly) {
    for (size_t i = 0; i < n_slots; ++i) {
      uint64_t g = 0, h = 0;
      for (const auto& p : parts) {
        g += p.g_u64[i];
        h += p.h_u64[i];
      }
      slot(i).g = static_cast<int64_t>(g);
      slot(i).h = static_cast<int64_t>(h);
    }
    return out;
  }
  if (key == nullptr) throw ProtocolError("server key missing for Paillier aggregation");
  const phe::PublicKey& pk = key->public_key;
  phe::FixedPointCodec codec(pk);
  std::vector<phe::Ciphertext> cs(parts.size());
  for (size_t i = 0; i < n_slots; ++i) {
    for (int c = 0; c < 2; ++c) {
      for (size_t k = 0; k < parts.size(); ++k) {
        cs[k] = c == 0 ? parts[k].g_enc[i] : parts[k].h_enc[i];
      }
      int64_t v = codec.DecodeInteger(phe::Decrypt(key->private_key, pk, phe::Aggregate(pk, cs)));
      (c == 0 ? slot(i).g : slot(i).h) = v;
    }
  }
  return out;
}

}  // namespace fedxgb::fed
