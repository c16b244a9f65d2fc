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

#include "fedxgb/phe/serialization.h"

#include <map>
#include <sstream>
#include <string>

#include "fedxgb/common/errors.h"

namespace fedxgb::phe {
namespace {

constexpr std::string_view kPublicHeader = "fedxgb-paillier-public v1";
constexpr std::string_view kPrivateHeader = "fedxgb-paillier-private v1";

std::map<std::string, mpz_class> ParseKeyFile(std::string_view text,
                                              std::string_view header) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw EncodingError("key file: expected header '" + std::string(header) +
                        "'");
  }
  std::map<std::string, mpz_class> fields;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw EncodingError("key file: malformed line '" + line + "'");
    }
    fields[line.substr(0, eq)] = FromHex(std::string_view(line).substr(eq + 1));
  }
  return fields;
}

const mpz_class& Field(const std::map<std::string, mpz_class>& fields,
                       const std::string& name) {
  auto it = fields.find(name);
  if (it == fields.end()) throw EncodingError("key file: missing " + name);
  return it->second;
}

}  // namespace

std::string ToHex(const mpz_class& v) {
  if (v < 0) throw EncodingError("cannot hex-encode a negative integer");
  return v.get_str(16);
}

mpz_class FromHex(std::string_view hex) {
  if (hex.empty()) throw EncodingError("empty hex string");
  for (char c : hex) {
    const bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    if (!ok) throw EncodingError("invalid hex digit in '" + std::string(hex) + "'");
  }
  return mpz_class(std::string(hex), 16);
}

std::string SerializePublicKey(const PublicKey& pk) {
  std::ostringstream out;
  out << kPublicHeader << "\n"
      << "n=" << ToHex(pk.n) << "\n"
      << "g=" << ToHex(pk.g) << "\n";
  return out.str();
}

PublicKey ParsePublicKey(std::string_view text) {
  auto fields = ParseKeyFile(text, kPublicHeader);
  PublicKey pk;
  pk.n = Field(fields, "n");
  pk.g = Field(fields, "g");
  pk.n_squared = pk.n * pk.n;
  return pk;
}

std::string SerializePrivateKey(const PrivateKey& sk) {
  std::ostringstream out;
  out << kPrivateHeader << "\n"
      << "lambda=" << ToHex(sk.lambda) << "\n"
      << "mu=" << ToHex(sk.mu) << "\n";
  return out.str();
}

PrivateKey ParsePrivateKey(std::string_view text) {
  auto fields = ParseKeyFile(text, kPrivateHeader);
  return PrivateKey{Field(fields, "lambda"), Field(fields, "mu")};
}

}  // namespace fedxgb::phe
