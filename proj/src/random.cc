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

#include "pplp/random.h"

#include <array>
#include <stdexcept>
#include <string>

#include <openssl/sha.h>

namespace pplp {

Rng::Rng(std::uint64_t seed) : state_(std::make_unique<gmp_randclass>(gmp_randinit_mt)) {
  state_->seed(mpz_class(static_cast<unsigned long>(seed)));
}

Rng::Rng(const mpz_class& seed) : state_(std::make_unique<gmp_randclass>(gmp_randinit_mt)) {
  state_->seed(seed);
}

Rng Rng::Derive(std::uint64_t seed, std::string_view label,
                std::uint64_t index) {
  std::string material = std::to_string(seed);
  material.push_back('/');
  material.append(label);
  material.push_back('/');
  material.append(std::to_string(index));
  std::array<unsigned char, SHA256_DIGEST_LENGTH> digest{};
  SHA256(reinterpret_cast<const unsigned char*>(material.data()),
         material.size(), digest.data());
  mpz_class derived;
  mpz_import(derived.get_mpz_t(), digest.size(), 1, 1, 1, 0, digest.data());
  return Rng(derived);
}

mpz_class Rng::Bits(unsigned long bits) {
  if (bits == 0) return 0;
  return state_->get_z_bits(bits);
}

mpz_class Rng::Below(const mpz_class& bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::Below: bound must be positive");
  return state_->get_z_range(bound);
}

mpz_class Rng::Range(const mpz_class& lo, const mpz_class& hi) {
  if (hi < lo) throw std::invalid_argument("Rng::Range: empty range");
  return lo + Below(hi - lo + 1);
}

std::uint64_t Rng::Next64() {
  mpz_class v = Bits(64);
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

std::size_t Rng::Index(std::size_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::Index: bound must be positive");
  return static_cast<std::size_t>(Below(mpz_class(static_cast<unsigned long>(bound))).get_ui());
}

}  // namespace pplp
