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

#include <random>

#include <gtest/gtest.h>

#include "fedxgb/common/errors.h"
#include "fedxgb/phe/codec.h"
#include "fedxgb/phe/paillier.h"
#include "fedxgb/phe/serialization.h"

namespace fedxgb::phe {
namespace {

const KeyPair& Key512() {
  static const KeyPair kp = [] {
    KeyGenOptions o;
    o.key_bits = 512;
    o.seed = 11;
    return GenerateKeyPair(o);
  }();
  return kp;
}

// Hand-computed toy instance: p = 3, q = 5, n = 15, g = 16.
TEST(Paillier, ToyExampleByHand) {
  KeyPair kp = KeyPairFromPrimes(3, 5);
  EXPECT_EQ(kp.public_key.n, 15);
  EXPECT_EQ(kp.public_key.g, 16);
  EXPECT_EQ(kp.public_key.n_squared, 225);
  Ciphertext c = EncryptWithNonce(kp.public_key, 7, 2);
  EXPECT_EQ(c.value, 83);  // 16^7 * 2^15 mod 225
  EXPECT_EQ(Decrypt(kp.private_key, kp.public_key, c), 7);

  Ciphertext a = EncryptWithNonce(kp.public_key, 3, 4);
  Ciphertext b = EncryptWithNonce(kp.public_key, 5, 7);
  EXPECT_EQ(a.value, 154);
  EXPECT_EQ(b.value, 193);
  EXPECT_EQ(Decrypt(kp.private_key, kp.public_key, Add(kp.public_key, a, b)), 8);
  // Sums wrap modulo n.
  Ciphertext d = EncryptWithNonce(kp.public_key, 9, 2);
  EXPECT_EQ(Decrypt(kp.private_key, kp.public_key, Add(kp.public_key, c, d)), 1);
}

TEST(Paillier, EmptyAggregateDecryptsToZero) {
  const auto& kp = Key512();
  Ciphertext one = Aggregate(kp.public_key, {});
  EXPECT_EQ(one.value, 1);
  EXPECT_EQ(Decrypt(kp.private_key, kp.public_key, one), 0);
}

TEST(Paillier, RejectsBadPrimesAndInputs) {
  EXPECT_THROW(KeyPairFromPrimes(5, 5), ConfigError);
  EXPECT_THROW(KeyPairFromPrimes(3, 7), ConfigError);  // gcd(21, 12) = 3
  KeyPair kp = KeyPairFromPrimes(3, 5);
  EXPECT_THROW(EncryptWithNonce(kp.public_key, 15, 2), EncodingError);
  EXPECT_THROW(EncryptWithNonce(kp.public_key, 1, 3), EncodingError);
  EXPECT_THROW(EncryptWithNonce(kp.public_key, 1, 0), EncodingError);
  EXPECT_THROW(Decrypt(kp.private_key, kp.public_key, Ciphertext{225}), EncodingError);
  KeyGenOptions o;
  o.key_bits = 32;
  EXPECT_THROW(GenerateKeyPair(o), ConfigError);
}

TEST(Paillier, KeySizeAndSeededReproducibility) {
  const auto& kp = Key512();
  EXPECT_EQ(kp.public_key.bits(), 512);
  KeyGenOptions o;
  o.key_bits = 512;
  o.seed = 11;
  EXPECT_EQ(GenerateKeyPair(o).public_key, kp.public_key);
  o.seed = 12;
  EXPECT_NE(GenerateKeyPair(o).public_key, kp.public_key);
}

TEST(Paillier, RandomGeneratorMode) {
  KeyGenOptions o;
  o.key_bits = 256;
  o.seed = 5;
  o.generator = GeneratorMode::kRandom;
  KeyPair kp = GenerateKeyPair(o);
  EXPECT_NE(kp.public_key.g, kp.public_key.n + 1);
  Encryptor enc(kp.public_key, 1);
  mpz_class m = 123456789;
  EXPECT_EQ(Decrypt(kp.private_key, kp.public_key, enc.Encrypt(m)), m);
}

TEST(Paillier, HomomorphicSumsAt512Bits) {
  const auto& kp = Key512();
  Encryptor enc(kp.public_key, 3);
  gmp_randclass r(gmp_randinit_mt);
  r.seed(99);
  for (int i = 0; i < 50; ++i) {
    mpz_class a = r.get_z_range(kp.public_key.n);
    mpz_class b = r.get_z_range(kp.public_key.n);
    Ciphertext s = Add(kp.public_key, enc.Encrypt(a), enc.Encrypt(b));
    EXPECT_EQ(Decrypt(kp.private_key, kp.public_key, s), mpz_class((a + b) % kp.public_key.n));
  }
}

TEST(Paillier, EncryptionIsRandomized) {
  const auto& kp = Key512();
  Encryptor enc(kp.public_key, 3);
  EXPECT_NE(enc.Encrypt(5).value, enc.Encrypt(5).value);
  Encryptor a(kp.public_key, 8), b(kp.public_key, 8);
  EXPECT_EQ(a.Encrypt(5).value, b.Encrypt(5).value);
}

TEST(Codec, SignedRoundTrip) {
  const auto& kp = Key512();
  FixedPointCodec codec(kp.public_key);
  for (double x : {0.0, 1.0, -1.0, 0.25, -0.75, 1234.5, -98765.125}) {
    EXPECT_DOUBLE_EQ(codec.Decode(codec.Encode(x)), x);
  }
  EXPECT_EQ(codec.DecodeInteger(codec.EncodeInteger(-42)), -42);
  EXPECT_EQ(codec.Signed(kp.public_key.n - 1), -1);
}

TEST(Codec, EncryptedSignedSum) {
  const auto& kp = Key512();
  FixedPointCodec codec(kp.public_key);
  Encryptor enc(kp.public_key, 4);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Ciphertext> cs;
  double expected = 0.0;
  const int terms = 200;
  for (int i = 0; i < terms; ++i) {
    const double x = u(rng);
    expected += x;
    cs.push_back(enc.Encrypt(codec.Encode(x)));
  }
  const double got =
      codec.Decode(Decrypt(kp.private_key, kp.public_key, Aggregate(kp.public_key, cs)));
  EXPECT_NEAR(got, expected, 2.0 * terms * std::ldexp(1.0, -40));
}

TEST(Codec, OverflowIsRejected) {
  KeyPair kp = KeyPairFromPrimes(3, 5);
  FixedPointCodec small(kp.public_key.n, 0, 1);
  EXPECT_THROW(small.Encode(100.0), EncodingError);
  EXPECT_THROW(small.DecodeInteger(15), EncodingError);
}

TEST(Serialization, HexAndKeyFiles) {
  EXPECT_EQ(ToHex(0), "0");
  EXPECT_EQ(ToHex(255), "ff");
  EXPECT_EQ(FromHex("ff"), 255);
  EXPECT_THROW(FromHex(""), EncodingError);
  EXPECT_THROW(FromHex("xyz"), EncodingError);
  const auto& kp = Key512();
  const std::string pub = SerializePublicKey(kp.public_key);
  EXPECT_EQ(pub.rfind("fedxgb-paillier-public v1", 0), 0u);
  EXPECT_EQ(ParsePublicKey(pub), kp.public_key);
  EXPECT_EQ(ParsePrivateKey(SerializePrivateKey(kp.private_key)), kp.private_key);
  EXPECT_THROW(ParsePublicKey("garbage"), EncodingError);
}

}  // namespace
}  // namespace fedxgb::phe
