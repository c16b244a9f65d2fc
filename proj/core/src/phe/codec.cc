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

#include "fedxgb/phe/codec.h"

#include <cmath>
#include <limits>
#include <string>

#include "fedxgb/common/errors.h"

namespace fedxgb::phe {

FixedPointCodec::FixedPointCodec(mpz_class n, int scale_bits, int64_t max_terms)
    : n_(std::move(n)), scale_bits_(scale_bits), max_terms_(max_terms) {
  if (scale_bits_ < 0 || scale_bits_ > 512 || max_terms_ < 1 || n_ < 4) {
    throw ConfigError("invalid fixed-point codec parameters");
  }
  half_n_ = n_ / 2;
  // max_magnitude * 2^s * 2 * max_terms < n
  mpz_class limit = (n_ - 1) / (2 * mpz_class(max_terms_));
  max_magnitude_ = std::ldexp(limit.get_d(), -scale_bits_);
  if (max_magnitude_ <= 0) {
    throw ConfigError("modulus too small for the requested codec range");
  }
}

mpz_class FixedPointCodec::Encode(double x) const {
  if (!std::isfinite(x)) throw EncodingError("cannot encode non-finite value");
  const double scaled = std::nearbyint(std::ldexp(x, scale_bits_));
  mpz_class q(scaled);
  if (abs(q) >= half_n_) {
    throw EncodingError("value " + std::to_string(x) +
                        " exceeds the codec range");
  }
  if (q < 0) q += n_;
  return q;
}

mpz_class FixedPointCodec::EncodeInteger(int64_t q) const {
  mpz_class m(std::to_string(q));
  if (abs(m) >= half_n_) throw EncodingError("integer exceeds codec range");
  if (m < 0) m += n_;
  return m;
}

mpz_class FixedPointCodec::Signed(const mpz_class& m) const {
  if (m < 0 || m >= n_) throw EncodingError("plaintext outside [0, n)");
  return m > half_n_ ? mpz_class(m - n_) : m;
}

double FixedPointCodec::Decode(const mpz_class& m) const {
  mpz_class s = Signed(m);
  // mpz_get_d truncates; values of interest are < 2^53 * 2^s in practice,
  // where the conversion is exact.
  return std::ldexp(s.get_d(), -scale_bits_);
}

int64_t FixedPointCodec::DecodeInteger(const mpz_class& m) const {
  mpz_class s = Signed(m);
  if (!mpz_fits_slong_p(s.get_mpz_t())) {
    throw EncodingError("decoded value does not fit in 64 bits");
  }
  static_assert(sizeof(long) == sizeof(int64_t));
  return static_cast<int64_t>(mpz_get_si(s.get_mpz_t()));
}

}  // namespace fedxgb::phe
