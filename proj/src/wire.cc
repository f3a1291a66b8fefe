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

#include "pplp/wire.h"

#include <array>
#include <cstdio>

#include <openssl/sha.h>

#include "pplp/error.h"

namespace pplp {
namespace {

void ExpectType(WireReader& r, PayloadType t) {
  const auto got = r.GetU8();
  if (got != static_cast<std::uint8_t>(t)) {
    throw Error("payload type " + std::to_string(got) + " where " +
                std::to_string(static_cast<int>(t)) + " was expected");
  }
}

std::string Hex(const unsigned char* data, std::size_t n) {
  std::string out;
  out.reserve(2 * n);
  char buf[3];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", data[i]);
    out += buf;
  }
  return out;
}

}  // namespace

void WireWriter::PutU8(std::uint8_t v) { out_.push_back(v); }

void WireWriter::PutU32(std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
}

void WireWriter::PutI32(std::int32_t v) { PutU32(static_cast<std::uint32_t>(v)); }

void WireWriter::PutInteger(const mpz_class& v) {
  PutU8(v < 0 ? 1 : 0);
  std::size_t count = 0;
  Bytes mag((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
  if (v != 0) mpz_export(mag.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  mag.resize(count);
  PutU32(static_cast<std::uint32_t>(count));
  out_.insert(out_.end(), mag.begin(), mag.end());
}

void WireWriter::PutRational(const mpq_class& v) {
  PutInteger(v.get_num());
  PutInteger(v.get_den());
}

void WireWriter::PutString(const std::string& s) {
  PutU32(static_cast<std::uint32_t>(s.size()));
  out_.insert(out_.end(), s.begin(), s.end());
}

void WireReader::Need(std::size_t n) const {
  if (in_.size() - pos_ < n) throw Error("truncated payload");
}

std::uint8_t WireReader::GetU8() {
  Need(1);
  return in_[pos_++];
}

std::uint32_t WireReader::GetU32() {
  Need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | in_[pos_++];
  return v;
}

std::int32_t WireReader::GetI32() { return static_cast<std::int32_t>(GetU32()); }

mpz_class WireReader::GetInteger() {
  const std::uint8_t sign = GetU8();
  const std::uint32_t len = GetU32();
  Need(len);
  mpz_class v = 0;
  if (len > 0) mpz_import(v.get_mpz_t(), len, 1, 1, 1, 0, in_.data() + pos_);
  pos_ += len;
  return sign ? mpz_class(-v) : v;
}

mpq_class WireReader::GetRational() {
  mpz_class num = GetInteger();
  mpz_class den = GetInteger();
  if (den <= 0) throw Error("nonpositive denominator in payload");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::string WireReader::GetString() {
  const std::uint32_t len = GetU32();
  Need(len);
  std::string s(in_.begin() + pos_, in_.begin() + pos_ + len);
  pos_ += len;
  return s;
}

void WireReader::ExpectEnd() const {
  if (!AtEnd()) throw Error("trailing bytes in payload");
}

Bytes EncodePayload(const PublicKey& pk) {
  WireWriter w;
  w.PutU8(static_cast<std::uint8_t>(PayloadType::kPublicKey));
  w.PutInteger(pk.n);
  w.PutString(pk.key_id);
  return w.Finish();
}

Bytes EncodePayload(const CipherMatrix& c) {
  WireWriter w;
  w.PutU8(static_cast<std::uint8_t>(PayloadType::kCipherMatrix));
  w.PutU32(static_cast<std::uint32_t>(c.rows()));
  w.PutU32(static_cast<std::uint32_t>(c.cols()));
  w.PutI32(c.scale_exp());
  w.PutString(c.key_id());
  for (const auto& v : c.cells()) w.PutInteger(v);
  return w.Finish();
}

Bytes EncodePayload(const RationalMatrix& m) {
  WireWriter w;
  w.PutU8(static_cast<std::uint8_t>(PayloadType::kRationalMatrix));
  w.PutU32(static_cast<std::uint32_t>(m.rows()));
  w.PutU32(static_cast<std::uint32_t>(m.cols()));
  for (const auto& v : m.entries()) w.PutRational(v);
  return w.Finish();
}

Bytes EncodePermutationPayload(const std::vector<std::size_t>& perm) {
  WireWriter w;
  w.PutU8(static_cast<std::uint8_t>(PayloadType::kPermutation));
  w.PutU32(static_cast<std::uint32_t>(perm.size()));
  for (auto p : perm) w.PutU32(static_cast<std::uint32_t>(p));
  return w.Finish();
}

PayloadType PeekPayloadType(const Bytes& payload) {
  if (payload.empty()) throw Error("empty payload");
  return static_cast<PayloadType>(payload.front());
}

PublicKey DecodePublicKeyPayload(const Bytes& payload) {
  WireReader r(payload);
  ExpectType(r, PayloadType::kPublicKey);
  PublicKey pk = MakePublicKey(r.GetInteger());
  if (r.GetString() != pk.key_id) throw Error("public key payload key_id mismatch");
  r.ExpectEnd();
  return pk;
}

CipherMatrix DecodeCipherMatrixPayload(const Bytes& payload) {
  WireReader r(payload);
  ExpectType(r, PayloadType::kCipherMatrix);
  const std::size_t rows = r.GetU32();
  const std::size_t cols = r.GetU32();
  const int scale = r.GetI32();
  std::string key_id = r.GetString();
  std::vector<mpz_class> cells(rows * cols);
  for (auto& v : cells) v = r.GetInteger();
  r.ExpectEnd();
  return CipherMatrix(rows, cols, scale, std::move(key_id), std::move(cells));
}

RationalMatrix DecodeRationalMatrixPayload(const Bytes& payload) {
  WireReader r(payload);
  ExpectType(r, PayloadType::kRationalMatrix);
  const std::size_t rows = r.GetU32();
  const std::size_t cols = r.GetU32();
  std::vector<mpq_class> entries(rows * cols);
  for (auto& v : entries) v = r.GetRational();
  r.ExpectEnd();
  return RationalMatrix(rows, cols, std::move(entries));
}

std::vector<std::size_t> DecodePermutationPayload(const Bytes& payload) {
  WireReader r(payload);
  ExpectType(r, PayloadType::kPermutation);
  std::vector<std::size_t> perm(r.GetU32());
  for (auto& p : perm) p = r.GetU32();
  r.ExpectEnd();
  return perm;
}

std::string Sha256Hex(const Bytes& data) {
  std::array<unsigned char, SHA256_DIGEST_LENGTH> digest{};
  SHA256(data.data(), data.size(), digest.data());
  return Hex(digest.data(), digest.size());
}

std::string Sha256Hex(const std::string& data) {
  std::array<unsigned char, SHA256_DIGEST_LENGTH> digest{};
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest.data());
  return Hex(digest.data(), digest.size());
}

}  // namespace pplp
