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

#ifndef PPLP_RANDOM_H_
#define PPLP_RANDOM_H_

#include <cstdint>
#include <memory>
#include <string_view>

#include <gmpxx.h>

namespace pplp {

// Deterministic entropy source backed by GMP's Mersenne Twister. Every
// component that needs randomness takes one of these explicitly; there is no
// process-global generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  explicit Rng(const mpz_class& seed);
  Rng(Rng&&) noexcept = default;
  Rng& operator=(Rng&&) noexcept = default;

  // Independent stream derived from this seed and a label (SHA-256 based), so
  // parties and sub-steps get reproducible, non-overlapping randomness.
  static Rng Derive(std::uint64_t seed, std::string_view label,
                    std::uint64_t index = 0);

  // Uniform in [0, 2^bits).
  mpz_class Bits(unsigned long bits);
  // Uniform in [0, bound). bound must be positive.
  mpz_class Below(const mpz_class& bound);
  // Uniform in [lo, hi], lo <= hi.
  mpz_class Range(const mpz_class& lo, const mpz_class& hi);
  std::uint64_t Next64();
  std::size_t Index(std::size_t bound);

 private:
  std::unique_ptr<gmp_randclass> state_;
};

}  // namespace pplp

#endif  // PPLP_RANDOM_H_
