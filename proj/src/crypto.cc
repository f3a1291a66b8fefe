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

#include <array>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include <openssl/sha.h>

#include "pplp/error.h"

namespace pplp {
namespace {

constexpr int kPrimalityRounds = 64;

std::string DeriveKeyId(const mpz_class& n) {
  const std::string text = n.get_str(16);
  std::array<unsigned char, SHA256_DIGEST_LENGTH> digest{};
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(),
         digest.data());
  std::string id;
  char buf[3];
  for (int i = 0; i < 8; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    id += buf;
  }
  return id;
}

// Random prime of exactly `bits` bits with the two top bits set, so the
// product of two such primes has exactly 2 * bits bits.
mpz_class RandomPrime(unsigned long bits, Rng& rng) {
  for (;;) {
    mpz_class candidate = rng.Bits(bits);
    mpz_setbit(candidate.get_mpz_t(), bits - 1);
    mpz_setbit(candidate.get_mpz_t(), bits - 2);
    mpz_setbit(candidate.get_mpz_t(), 0);
    if (mpz_probab_prime_p(candidate.get_mpz_t(), kPrimalityRounds) != 0) {
      return candidate;
    }
  }
}

void CheckSameKey(const std::string& expected, const std::string& actual) {
  if (expected != actual) {
    throw KeyMismatchError("ciphertext key " + actual +
                           " does not match key " + expected);
  }
}

mpz_class PowMod(const mpz_class& base, const mpz_class& exp,
                 const mpz_class& mod) {
  mpz_class out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

std::map<std::string, std::string> ReadFields(std::istream& in) {
  std::map<std::string, std::string> fields;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected name=value");
    fields[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return fields;
}

mpz_class ParseField(const std::map<std::string, std::string>& fields,
                     const std::string& name) {
  auto it = fields.find(name);
  if (it == fields.end()) throw Error("key file missing field '" + name + "'");
  mpz_class v;
  if (v.set_str(it->second, 10) != 0 || v < 0) {
    throw Error("key file field '" + name + "' is not a decimal integer");
  }
  return v;
}

}  // namespace

PublicKey MakePublicKey(const mpz_class& n) {
  if (n < 3 || mpz_even_p(n.get_mpz_t())) {
    throw std::invalid_argument("Paillier modulus must be odd and > 2");
  }
  PublicKey pk;
  pk.n = n;
  pk.n_squared = n * n;
  pk.g = n + 1;
  pk.key_id = DeriveKeyId(n);
  return pk;
}

KeyPair GenerateKeyPair(int bits, Rng& rng) {
  if (bits < kMinKeyBits) {
    throw std::invalid_argument("key size " + std::to_string(bits) +
                                " is below the " + std::to_string(kMinKeyBits) +
                                "-bit floor");
  }
  if (bits % 2 != 0) throw std::invalid_argument("key size must be even");
  const unsigned long half_bits = static_cast<unsigned long>(bits) / 2;
  for (;;) {
    const mpz_class p = RandomPrime(half_bits, rng);
    const mpz_class q = RandomPrime(half_bits, rng);
    if (p == q) continue;
    const mpz_class n = p * q;
    const mpz_class pm1 = p - 1;
    const mpz_class qm1 = q - 1;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), mpz_class(pm1 * qm1).get_mpz_t());
    if (g != 1) continue;

    KeyPair kp;
    kp.pub = MakePublicKey(n);
    mpz_lcm(kp.priv.lambda.get_mpz_t(), pm1.get_mpz_t(), qm1.get_mpz_t());
    // With g = n + 1, L(g^lambda mod n^2) = lambda mod n.
    if (mpz_invert(kp.priv.mu.get_mpz_t(), kp.priv.lambda.get_mpz_t(),
                   n.get_mpz_t()) == 0) {
      continue;
    }
    kp.priv.pub = kp.pub;
    return kp;
  }
}

Ciphertext Encrypt(const PublicKey& pk, const mpz_class& m,
                   const mpz_class& nonce) {
  if (m < 0 || m >= pk.n) {
    throw RangeError("plaintext outside [0, n)");
  }
  if (nonce <= 0 || nonce >= pk.n) throw NonceError("nonce outside (0, n)");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), nonce.get_mpz_t(), pk.n.get_mpz_t());
  if (g != 1) throw NonceError("nonce not coprime to n");
  // (1 + n)^m = 1 + m*n (mod n^2)
  const mpz_class gm = (1 + m * pk.n) % pk.n_squared;
  const mpz_class rn = PowMod(nonce, pk.n, pk.n_squared);
  return Ciphertext{(gm * rn) % pk.n_squared, pk.key_id};
}

mpz_class RandomNonce(const PublicKey& pk, Rng& rng) {
  for (;;) {
    mpz_class r = rng.Range(1, pk.n - 1);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), pk.n.get_mpz_t());
    if (g == 1) return r;
  }
}

Ciphertext Encrypt(const PublicKey& pk, const mpz_class& m, Rng& rng) {
  return Encrypt(pk, m, RandomNonce(pk, rng));
}

mpz_class Decrypt(const PrivateKey& sk, const Ciphertext& c) {
  CheckSameKey(sk.key_id(), c.key_id);
  const PublicKey& pk = sk.pub;
  if (c.value <= 0 || c.value >= pk.n_squared) {
    throw RangeError("ciphertext outside (0, n^2)");
  }
  const mpz_class u = PowMod(c.value, sk.lambda, pk.n_squared);
  const mpz_class l = (u - 1) / pk.n;
  return (l * sk.mu) % pk.n;
}

Ciphertext AddCipher(const PublicKey& pk, const Ciphertext& a,
                     const Ciphertext& b) {
  CheckSameKey(pk.key_id, a.key_id);
  CheckSameKey(pk.key_id, b.key_id);
  return Ciphertext{(a.value * b.value) % pk.n_squared, pk.key_id};
}

Ciphertext ScalarMul(const PublicKey& pk, const Ciphertext& c,
                     const mpz_class& k) {
  CheckSameKey(pk.key_id, c.key_id);
  mpz_class exp = k % pk.n;
  if (exp < 0) exp += pk.n;
  return Ciphertext{PowMod(c.value, exp, pk.n_squared), pk.key_id};
}

Ciphertext Rerandomize(const PublicKey& pk, const Ciphertext& c, Rng& rng) {
  return AddCipher(pk, c, Encrypt(pk, 0, rng));
}

void WritePublicKey(std::ostream& out, const PublicKey& pk) {
  out << "n=" << pk.n.get_str(10) << '\n' << "key_id=" << pk.key_id << '\n';
}

void WritePrivateKey(std::ostream& out, const PrivateKey& sk) {
  out << "n=" << sk.pub.n.get_str(10) << '\n'
      << "lambda=" << sk.lambda.get_str(10) << '\n'
      << "mu=" << sk.mu.get_str(10) << '\n'
      << "key_id=" << sk.key_id() << '\n';
}

PublicKey ReadPublicKey(std::istream& in) {
  const auto fields = ReadFields(in);
  PublicKey pk = MakePublicKey(ParseField(fields, "n"));
  auto it = fields.find("key_id");
  if (it == fields.end() || it->second != pk.key_id) {
    throw Error("key file key_id does not match its modulus");
  }
  return pk;
}

PrivateKey ReadPrivateKey(std::istream& in) {
  const auto fields = ReadFields(in);
  PrivateKey sk;
  sk.pub = MakePublicKey(ParseField(fields, "n"));
  sk.lambda = ParseField(fields, "lambda");
  sk.mu = ParseField(fields, "mu");
  auto it = fields.find("key_id");
  if (it == fields.end() || it->second != sk.pub.key_id) {
    throw Error("key file key_id does not match its modulus");
  }
  return sk;
}

}  // namespace pplp
