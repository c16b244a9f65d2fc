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

#ifndef FEDXGB_PHE_PAILLIER_H_
#define FEDXGB_PHE_PAILLIER_H_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>

namespace fedxgb::phe {

// Public encryption key (n, g). n_squared is cached.
struct PublicKey {
  mpz_class n;
  mpz_class g;
  mpz_class n_squared;

  // Bit length of n.
  int bits() const;
  bool operator==(const PublicKey&) const = default;
};

// Private decryption key (lambda, mu).
struct PrivateKey {
  mpz_class lambda;
  mpz_class mu;
  bool operator==(const PrivateKey&) const = default;
};

struct KeyPair {
  PublicKey public_key;
  PrivateKey private_key;
};

// A Paillier ciphertext: an element of Z*_{n^2}.
struct Ciphertext {
  mpz_class value;
  bool operator==(const Ciphertext&) const = default;
};

enum class GeneratorMode {
  kNPlusOne,  // g = n + 1
  kRandom,    // g uniform in Z*_{n^2} with L(g^lambda mod n^2) invertible
};

struct KeyGenOptions {
  int key_bits = 2048;
  // When set, prime generation and the random generator are reproducible.
  std::optional<uint64_t> seed;
  GeneratorMode generator = GeneratorMode::kNPlusOne;
  int max_attempts = 64;
};

// Generates a keypair with primes p, q of key_bits/2 bits each (top two bits
// set, so n has exactly key_bits bits) and gcd(n, (p-1)(q-1)) = 1.
// Throws ConfigError for key_bits < 64 or if no valid pair is found within
// max_attempts.
KeyPair GenerateKeyPair(const KeyGenOptions& options);

// Builds a keypair from explicit primes. Throws ConfigError if p == q or
// gcd(pq, (p-1)(q-1)) != 1, or if `g` is given and not a valid generator.
KeyPair KeyPairFromPrimes(const mpz_class& p, const mpz_class& q,
                          const std::optional<mpz_class>& g = std::nullopt);

// L(u) = (u - 1) / n.
mpz_class PaillierL(const mpz_class& u, const mpz_class& n);

// c = g^m * r^n mod n^2 with caller-chosen nonce r.
// Throws EncodingError unless 0 <= m < n, 0 < r < n and gcd(r, n) = 1.
Ciphertext EncryptWithNonce(const PublicKey& pk, const mpz_class& m,
                            const mpz_class& r);

// m = L(c^lambda mod n^2) * mu mod n. Throws EncodingError if c is out of
// [0, n^2).
mpz_class Decrypt(const PrivateKey& sk, const PublicKey& pk,
                  const Ciphertext& c);

// Homomorphic addition: product of ciphertext values mod n^2. The empty
// product is the identity ciphertext 1, which decrypts to 0.
Ciphertext Aggregate(const PublicKey& pk, std::span<const Ciphertext> cs);

// Two-operand form of Aggregate.
Ciphertext Add(const PublicKey& pk, const Ciphertext& a, const Ciphertext& b);

// Encrypts with internally sampled nonces. Nonces come from a seeded stream
// when a seed is given (reproducible transcripts) and from std::random_device
// otherwise. A nonce sharing a factor with n is discarded and resampled.
class Encryptor {
 public:
  Encryptor(PublicKey pk, std::optional<uint64_t> seed);

  Ciphertext Encrypt(const mpz_class& m);
  const PublicKey& public_key() const { return pk_; }

 private:
  mpz_class SampleNonce();

  PublicKey pk_;
  gmp_randclass rng_;
};

}  // namespace fedxgb::phe

#endif  // FEDXGB_PHE_PAILLIER_H_
