// Copyright 2026 The pplp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pplp/crypto.h"

#include <set>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "pplp/error.h"
#include "pplp/random.h"

namespace pplp {
namespace {

class CryptoTest : public ::testing::Test {
 protected:
  CryptoTest() : rng_(2024), kp_(GenerateKeyPair(256, rng_)) {}
  Rng rng_;
  KeyPair kp_;
};

TEST_F(CryptoTest, KeyStructure) {
  EXPECT_EQ(kp_.pub.bits(), 256);
  EXPECT_EQ(kp_.pub.g, kp_.pub.n + 1);
  EXPECT_EQ(kp_.pub.n_squared, kp_.pub.n * kp_.pub.n);
  EXPECT_TRUE(mpz_odd_p(kp_.pub.n.get_mpz_t()));
  EXPECT_EQ(mpz_probab_prime_p(kp_.pub.n.get_mpz_t(), 25), 0);
  EXPECT_EQ(kp_.priv.key_id(), kp_.pub.key_id);
}

TEST_F(CryptoTest, BoundaryRoundtrips) {
  const mpz_class& n = kp_.pub.n;
  for (const mpz_class& m : {mpz_class(0), mpz_class(1), mpz_class(n / 2), mpz_class(n - 1)}) {
    EXPECT_EQ(Decrypt(kp_.priv, Encrypt(kp_.pub, m, rng_)), m);
  }
}

TEST_F(CryptoTest, DistinctModuli) {
  Rng other(2025);
  EXPECT_NE(GenerateKeyPair(256, other).pub.n, kp_.pub.n);
}

TEST_F(CryptoTest, RejectsSmallKeys) {
  EXPECT_THROW(GenerateKeyPair(64, rng_), std::invalid_argument);
  EXPECT_THROW(GenerateKeyPair(127, rng_), std::invalid_argument);
}

TEST_F(CryptoTest, EncryptPreconditions) {
  EXPECT_THROW(Encrypt(kp_.pub, kp_.pub.n, rng_), RangeError);
  EXPECT_THROW(Encrypt(kp_.pub, -1, rng_), RangeError);
  EXPECT_THROW(Encrypt(kp_.pub, 5, mpz_class(0)), NonceError);
  EXPECT_THROW(Encrypt(kp_.pub, 5, kp_.pub.n), NonceError);
}

TEST_F(CryptoTest, NoncesRerandomize) {
  const auto a = Encrypt(kp_.pub, 5, mpz_class(2));
  const auto b = Encrypt(kp_.pub, 5, mpz_class(3));
  EXPECT_NE(a.value, b.value);
  EXPECT_EQ(Decrypt(kp_.priv, a), 5);
  EXPECT_EQ(Decrypt(kp_.priv, Encrypt(kp_.pub, 7, mpz_class(12345))), 7);
  std::set<mpz_class> seen;
  for (int i = 0; i < 10000; ++i) seen.insert(Encrypt(kp_.pub, 42, rng_).value);
  EXPECT_EQ(seen.size(), 10000u);
  const auto r = Rerandomize(kp_.pub, a, rng_);
  EXPECT_NE(r.value, a.value);
  EXPECT_EQ(Decrypt(kp_.priv, r), 5);
}

TEST_F(CryptoTest, HomomorphicExamples) {
  const auto& pk = kp_.pub;
  auto dec = [&](const Ciphertext& c) { return Decrypt(kp_.priv, c); };
  EXPECT_EQ(dec(AddCipher(pk, Encrypt(pk, 3, rng_), Encrypt(pk, 4, rng_))), 7);
  EXPECT_EQ(dec(AddCipher(pk, Encrypt(pk, 9, rng_), Encrypt(pk, 0, rng_))), 9);
  EXPECT_EQ(dec(AddCipher(pk, Encrypt(pk, pk.n - 1, rng_), Encrypt(pk, 1, rng_))), 0);
  const auto five = Encrypt(pk, 5, rng_);
  EXPECT_EQ(dec(ScalarMul(pk, five, 3)), 15);
  EXPECT_EQ(dec(ScalarMul(pk, five, 0)), 0);
  EXPECT_EQ(dec(ScalarMul(pk, five, -1)), pk.n - 5);
}

TEST_F(CryptoTest, KeySeparation) {
  Rng other(7);
  const KeyPair kp2 = GenerateKeyPair(256, other);
  const auto c = Encrypt(kp_.pub, 1, rng_);
  EXPECT_THROW(Decrypt(kp2.priv, c), KeyMismatchError);
  EXPECT_THROW(AddCipher(kp_.pub, c, Encrypt(kp2.pub, 1, other)), KeyMismatchError);
}

TEST_F(CryptoTest, RandomizedHomomorphism) {
  const auto& pk = kp_.pub;
  for (int i = 0; i < 200; ++i) {
    const mpz_class a = rng_.Below(pk.n);
    const mpz_class b = rng_.Below(pk.n);
    const mpz_class k = rng_.Range(-pk.n, pk.n);
    mpz_class sum = (a + b) % pk.n;
    mpz_class prod = (k * a) % pk.n;
    if (prod < 0) prod += pk.n;
    EXPECT_EQ(Decrypt(kp_.priv, AddCipher(pk, Encrypt(pk, a, rng_), Encrypt(pk, b, rng_))), sum);
    EXPECT_EQ(Decrypt(kp_.priv, ScalarMul(pk, Encrypt(pk, a, rng_), k)), prod);
  }
}

TEST(ToyModulusTest, ExhaustiveAddition) {
  // n = 11 * 13, lambda = lcm(10, 12) = 60.
  const PublicKey pk = MakePublicKey(143);
  PrivateKey sk;
  sk.lambda = 60;
  mpz_invert(sk.mu.get_mpz_t(), sk.lambda.get_mpz_t(), pk.n.get_mpz_t());
  sk.pub = pk;
  Rng rng(1);
  for (long a = 0; a < 143; ++a) {
    const auto ca = Encrypt(pk, a, rng);
    ASSERT_EQ(Decrypt(sk, ca), a);
    for (long b = 0; b < 143; ++b) {
      ASSERT_EQ(Decrypt(sk, AddCipher(pk, ca, Encrypt(pk, b, rng))), (a + b) % 143);
    }
  }
}

TEST_F(CryptoTest, KeySerializationRoundtrip) {
  std::stringstream pub;
  std::stringstream priv;
  WritePublicKey(pub, kp_.pub);
  WritePrivateKey(priv, kp_.priv);
  const PublicKey pk = ReadPublicKey(pub);
  const PrivateKey sk = ReadPrivateKey(priv);
  EXPECT_EQ(pk.n, kp_.pub.n);
  EXPECT_EQ(pk.key_id, kp_.pub.key_id);
  EXPECT_EQ(sk.lambda, kp_.priv.lambda);
  EXPECT_EQ(Decrypt(sk, Encrypt(pk, 99, rng_)), 99);
}

TEST(KeyFileTest, RejectsTamperedFiles) {
  std::istringstream missing("n=15\n");
  EXPECT_THROW(ReadPrivateKey(missing), Error);
  std::istringstream bad_id("n=143\nkey_id=0000000000000000\n");
  EXPECT_THROW(ReadPublicKey(bad_id), Error);
  std::istringstream garbage("n143\n");
  EXPECT_THROW(ReadPublicKey(garbage), ParseError);
}

TEST(KeyGenerationTest, DeterministicForSeed) {
  Rng a(77);
  Rng b(77);
  EXPECT_EQ(GenerateKeyPair(256, a).pub.n, GenerateKeyPair(256, b).pub.n);
}

}  // namespace
}  // namespace pplp
