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

#ifndef FEDXGB_PHE_SERIALIZATION_H_
#define FEDXGB_PHE_SERIALIZATION_H_

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "fedxgb/phe/paillier.h"

namespace fedxgb::phe {

// Lowercase big-endian hexadecimal, no prefix. Zero is "0".
std::string ToHex(const mpz_class& v);
// Throws EncodingError on empty input or non-hex characters.
mpz_class FromHex(std::string_view hex);

// Key files: a version header line followed by `name=hex` lines.
//
//   fedxgb-paillier-public v1
//   n=...
//   g=...
std::string SerializePublicKey(const PublicKey& pk);
PublicKey ParsePublicKey(std::string_view text);
std::string SerializePrivateKey(const PrivateKey& sk);
PrivateKey ParsePrivateKey(std::string_view text);

}  // namespace fedxgb::phe

#endif  // FEDXGB_PHE_SERIALIZATION_H_
