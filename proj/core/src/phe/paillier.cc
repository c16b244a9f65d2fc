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

#include "fedxgb/phe/paillier.h"

#include <random>
#include <string>

#include "fedxgb/common/errors.h"

namespace fedxgb::phe {
namespace {

mpz_class Lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

mpz_class Gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

mpz_class PowMod(const mpz_class& base, const mpz_class& exp,
                 const mpz_class& mod) {
  mpz_class out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(),
           mod.get_mpz_t());
  return out;
}

// Returns false if `a` has no inverse modulo `mod`.
bool InvertMod(const mpz_class& a, const mpz_class& mod, mpz_class* out) {
  return mpz_invert(out->get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) != 0;
}

void SeedRandState(gmp_randclass& rng, std::optional<uint64_t> seed) {
  if (seed.has_value()) {
    rng.seed(mpz_class(std::to_string(*seed)));
    return;
  }
  std::random_device rd;
  mpz_class s = 0;
  for (int i = 0; i < 8; ++i) s = (s << 32) + rd();
  rng.seed(s);
}

// Random prime with exactly `bits` bits and its two top bits set.
mpz_class RandomPrime(gmp_randclass& rng, int bits) {
  for (;;) {
    mpz_class x = rng.get_z_bits(bits);
    mpz_setbit(x.get_mpz_t(), bits - 1);
    mpz_setbit(x.get_mpz_t(), bits - 2);
    mpz_nextprime(x.get_mpz_t(), x.get_mpz_t());
    if (static_cast<int>(mpz_sizeinbase(x.get_mpz_t(), 2)) == bits) return x;
  }
}

// Computes mu for generator g; returns false if L(g^lambda mod n^2) is not
// invertible mod n.
bool ComputeMu(const mpz_class& g, const mpz_class& lambda, const mpz_class& n,
               const mpz_class& n2, mpz_class* mu) {
  mpz_class l = PaillierL(PowMod(g, lambda, n2), n);
  return InvertMod(l, n, mu);
}

}  // namespace

int PublicKey::bits() const {
  return static_cast<int>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

mpz_class PaillierL(const mpz_class& u, const mpz_class& n) {
  mpz_class out = u - 1;
  mpz_tdiv_q(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
  return out;
}

KeyPair KeyPairFromPrimes(const mpz_class& p, const mpz_class& q,
                          const std::optional<mpz_class>& g) {
  if (p == q || p < 2 || q < 2) {
    throw ConfigError("Paillier primes must be distinct and >= 2");
  }
  const mpz_class n = p * q;
  const mpz_class phi = (p - 1) * (q - 1);
  if (Gcd(n, phi) != 1) {
    throw ConfigError("gcd(n, phi(n)) != 1 for the chosen primes");
  }
  KeyPair kp;
  kp.public_key.n = n;
  kp.public_key.n_squared = n * n;
  kp.public_key.g = g.has_value() ? *g : n + 1;
  kp.private_key.lambda = Lcm(p - 1, q - 1);
  const mpz_class& n2 = kp.public_key.n_squared;
  if (kp.public_key.g <= 0 || kp.public_key.g >= n2 ||
      Gcd(kp.public_key.g, n2) != 1 ||
      !ComputeMu(kp.public_key.g, kp.private_key.lambda, n, n2,
                 &kp.private_key.mu)) {
    throw ConfigError("invalid Paillier generator");
  }
  return kp;
}

KeyPair GenerateKeyPair(const KeyGenOptions& options) {
  if (options.key_bits < 64 || options.key_bits % 2 != 0) {
    throw ConfigError("key_bits must be an even number >= 64, got " +
                      std::to_string(options.key_bits));
  }
  gmp_randclass rng(gmp_randinit_mt);
  SeedRandState(rng, options.seed);
  const int half = options.key_bits / 2;

  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    const mpz_class p = RandomPrime(rng, half);
    const mpz_class q = RandomPrime(rng, half);
    const mpz_class n = p * q;
    if (p == q || Gcd(n, (p - 1) * (q - 1)) != 1) continue;
    if (options.generator == GeneratorMode::kNPlusOne) {
      return KeyPairFromPrimes(p, q);
    }
    const mpz_class n2 = n * n;
    const mpz_class lambda = Lcm(p - 1, q - 1);
    for (int g_attempt = 0; g_attempt < options.max_attempts; ++g_attempt) {
      mpz_class g = rng.get_z_range(n2);
      mpz_class mu;
      if (g == 0 || Gcd(g, n2) != 1 || !ComputeMu(g, lambda, n, n2, &mu)) {
        continue;
      }
      return KeyPairFromPrimes(p, q, g);
    }
  }
  throw ConfigError("Paillier key generation failed after " +
                    std::to_string(options.max_attempts) + " attempts");
}

Ciphertext EncryptWithNonce(const PublicKey& pk, const mpz_class& m,
                            const mpz_class& r) {
  if (m < 0 || m >= pk.n) {
    throw EncodingError("plaintext outside [0, n)");
  }
  if (r <= 0 || r >= pk.n || Gcd(r, pk.n) != 1) {
    throw EncodingError("nonce must lie in (0, n) and be coprime to n");
  }
  mpz_class gm;
  if (pk.g == pk.n + 1) {
    // (n + 1)^m = 1 + m*n (mod n^2)
    gm = (1 + m * pk.n) % pk.n_squared;
  } else {
    gm = PowMod(pk.g, m, pk.n_squared);
  }
  Ciphertext c;
  c.value = (gm * PowMod(r, pk.n, pk.n_squared)) % pk.n_squared;
  return c;
}

mpz_class Decrypt(const PrivateKey& sk, const PublicKey& pk,
                  const Ciphertext& c) {
  if (c.value < 0 || c.value >= pk.n_squared) {
    throw EncodingError("ciphertext outside [0, n^2)");
  }
  mpz_class m = PaillierL(PowMod(c.value, sk.lambda, pk.n_squared), pk.n);
  m = (m * sk.mu) % pk.n;
  return m;
}

Ciphertext Aggregate(const PublicKey& pk, std::span<const Ciphertext> cs) {
  Ciphertext acc{mpz_class(1)};
  for (const Ciphertext& c : cs) {
    acc.value *= c.value;
    acc.value %= pk.n_squared;
  }
  return acc;
}

Ciphertext Add(const PublicKey& pk, const Ciphertext& a, const Ciphertext& b) {
  return Ciphertext{(a.value * b.value) % pk.n_squared};
}

Encryptor::Encryptor(PublicKey pk, std::optional<uint64_t> seed)
    : pk_(std::move(pk)), rng_(gmp_randinit_mt) {
  SeedRandState(rng_, seed);
}

mpz_class Encryptor::SampleNonce() {
  for (;;) {
    mpz_class r = rng_.get_z_range(pk_.n);
    if (r != 0 && Gcd(r, pk_.n) == 1) return r;
  }
}

Ciphertext Encryptor::Encrypt(const mpz_class& m) {
  return EncryptWithNonce(pk_, m, SampleNonce());
}

}  // namespace fedxgb::phe
