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

#ifndef FEDXGB_PHE_CODEC_H_
#define FEDXGB_PHE_CODEC_H_

#include <gmpxx.h>

#include <cstdint>

#include "fedxgb/phe/paillier.h"

namespace fedxgb::phe {

// Signed fixed-point codec between reals and Paillier plaintexts.
//
// x is mapped to round(x * 2^scale_bits) mod n, so negatives wrap into the
// upper half of Z_n. Decoding reads any m > n/2 as m - n. Sums of up to
// max_terms encodings, each of magnitude at most max_magnitude(), decode
// without wrapping.
class FixedPointCodec {
 public:
  static constexpr int kDefaultScaleBits = 40;

  FixedPointCodec(mpz_class n, int scale_bits = kDefaultScaleBits,
                  int64_t max_terms = int64_t{1} << 20);
  explicit FixedPointCodec(const PublicKey& pk,
                           int scale_bits = kDefaultScaleBits,
                           int64_t max_terms = int64_t{1} << 20)
      : FixedPointCodec(pk.n, scale_bits, max_terms) {}

  // Throws EncodingError when |x| * 2^scale_bits >= n / 2.
  mpz_class Encode(double x) const;
  double Decode(const mpz_class& m) const;

  // Integer forms for values that are already fixed-point (q = x * 2^s).
  mpz_class EncodeInteger(int64_t q) const;
  // Throws EncodingError if m >= n or the signed value does not fit int64.
  int64_t DecodeInteger(const mpz_class& m) const;

  // Signed integer in (-n/2, n/2] represented by m.
  mpz_class Signed(const mpz_class& m) const;

  // Largest |x| for which max_terms encodings can be summed safely:
  // 2 * max_terms * max_magnitude * 2^scale_bits < n.
  double max_magnitude() const { return max_magnitude_; }

  int scale_bits() const { return scale_bits_; }
  int64_t max_terms() const { return max_terms_; }
  const mpz_class& modulus() const { return n_; }

 private:
  mpz_class n_;
  mpz_class half_n_;
  int scale_bits_;
  int64_t max_terms_;
  double max_magnitude_;
};

}  // namespace fedxgb::phe

#endif  // FEDXGB_PHE_CODEC_H_
