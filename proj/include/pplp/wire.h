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

#ifndef PPLP_WIRE_H_
#define PPLP_WIRE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pplp/crypto.h"
#include "pplp/encoding.h"
#include "pplp/linalg.h"

namespace pplp {

using Bytes = std::vector<std::uint8_t>;

// First byte of every message payload.
enum class PayloadType : std::uint8_t {
  kPublicKey = 1,
  kCipherMatrix = 2,
  kRationalMatrix = 3,
  kPermutation = 4,
};

// Big-endian, length-prefixed encodings. Integers are a sign byte, a u32
// magnitude length and the magnitude bytes; matrices carry u32 dimensions.
class WireWriter {
 public:
  void PutU8(std::uint8_t v);
  void PutU32(std::uint32_t v);
  void PutI32(std::int32_t v);
  void PutInteger(const mpz_class& v);
  void PutRational(const mpq_class& v);
  void PutString(const std::string& s);
  Bytes Finish() { return std::move(out_); }

 private:
  Bytes out_;
};

class WireReader {
 public:
  explicit WireReader(const Bytes& in) : in_(in) {}
  std::uint8_t GetU8();
  std::uint32_t GetU32();
  std::int32_t GetI32();
  mpz_class GetInteger();
  mpq_class GetRational();
  std::string GetString();
  bool AtEnd() const { return pos_ == in_.size(); }
  void ExpectEnd() const;

 private:
  void Need(std::size_t n) const;
  const Bytes& in_;
  std::size_t pos_ = 0;
};

Bytes EncodePayload(const PublicKey& pk);
Bytes EncodePayload(const CipherMatrix& c);
Bytes EncodePayload(const RationalMatrix& m);
Bytes EncodePermutationPayload(const std::vector<std::size_t>& perm);

PayloadType PeekPayloadType(const Bytes& payload);
PublicKey DecodePublicKeyPayload(const Bytes& payload);
CipherMatrix DecodeCipherMatrixPayload(const Bytes& payload);
RationalMatrix DecodeRationalMatrixPayload(const Bytes& payload);
std::vector<std::size_t> DecodePermutationPayload(const Bytes& payload);

std::string Sha256Hex(const Bytes& data);
std::string Sha256Hex(const std::string& data);

}  // namespace pplp

#endif  // PPLP_WIRE_H_
