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

#ifndef PPLP_CRYPTO_H_
#define PPLP_CRYPTO_H_

#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "pplp/random.h"

namespace pplp {

inline constexpr int kMinKeyBits = 128;
inline constexpr int kDefaultKeyBits = 2048;

// Paillier public key with the fixed generator g = n + 1.
struct PublicKey {
  mpz_class n;
  mpz_class n_squared;
  mpz_class g;
  std::string key_id;

  int bits() const { return static_cast<int>(mpz_sizeinbase(n.get_mpz_t(), 2)); }
  // floor((n - 1) / 2): the largest magnitude with an unambiguous sign.
  mpz_class half() const { return (n - 1) / 2; }
};

struct PrivateKey {
  mpz_class lambda;  // lcm(p - 1, q - 1)
  mpz_class mu;      // lambda^-1 mod n
  PublicKey pub;
  const std::string& key_id() const { return pub.key_id; }
};

struct KeyPair {
  PublicKey pub;
  PrivateKey priv;
};

struct Ciphertext {
  mpz_class value;
  std::string key_id;

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

// Builds a public key from its modulus; key_id is derived from n.
PublicKey MakePublicKey(const mpz_class& n);

// Two equal-length primes, each passing 64 rounds of probabilistic testing.
// Throws std::invalid_argument below kMinKeyBits or for odd sizes.
KeyPair GenerateKeyPair(int bits, Rng& rng);

Ciphertext Encrypt(const PublicKey& pk, const mpz_class& m,
                   const mpz_class& nonce);
// Draws a fresh nonce coprime to n.
Ciphertext Encrypt(const PublicKey& pk, const mpz_class& m, Rng& rng);
mpz_class RandomNonce(const PublicKey& pk, Rng& rng);

mpz_class Decrypt(const PrivateKey& sk, const Ciphertext& c);

// Dec(AddCipher(a, b)) = (Dec(a) + Dec(b)) mod n.
Ciphertext AddCipher(const PublicKey& pk, const Ciphertext& a,
                     const Ciphertext& b);
// Dec(ScalarMul(c, k)) = (k * Dec(c)) mod n. Negative k is reduced mod n.
Ciphertext ScalarMul(const PublicKey& pk, const Ciphertext& c,
                     const mpz_class& k);
// Multiplies by a fresh encryption of zero.
Ciphertext Rerandomize(const PublicKey& pk, const Ciphertext& c, Rng& rng);

// Keyed text format, one `name=decimal` field per line.
void WritePublicKey(std::ostream& out, const PublicKey& pk);
void WritePrivateKey(std::ostream& out, const PrivateKey& sk);
PublicKey ReadPublicKey(std::istream& in);
PrivateKey ReadPrivateKey(std::istream& in);

}  // namespace pplp

#endif  // PPLP_CRYPTO_H_
