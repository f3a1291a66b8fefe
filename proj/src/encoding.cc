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

#include "pplp/encoding.h"

#include <string>
#include <utility>

#include "pplp/error.h"

namespace pplp {
namespace {

std::string Coord(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r) + ", " + std::to_string(c) + ")";
}

void CheckExponent(int e, const ScaleConfig& cfg) {
  if (e < 0 || e > cfg.max_exp) {
    throw OverflowError("scale exponent " + std::to_string(e) +
                        " exceeds max_exp " + std::to_string(cfg.max_exp));
  }
}

void CheckKey(const PublicKey& pk, const CipherMatrix& a) {
  if (pk.key_id != a.key_id()) {
    throw KeyMismatchError("cipher matrix key " + a.key_id() +
                           " does not match key " + pk.key_id);
  }
}

}  // namespace

mpz_class ScaleConfig::delta() const {
  mpz_class d = 1;
  d <<= delta_exp;
  return d;
}

mpz_class ScaleConfig::DeltaPow(int e) const {
  mpz_class d = 1;
  d <<= static_cast<mp_bitcnt_t>(delta_exp) * static_cast<mp_bitcnt_t>(e);
  return d;
}

mpz_class ScaleConfig::ScaledBound(int e) const {
  mpq_class scaled = max_magnitude * mpq_class(DeltaPow(e));
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return out;
}

void CheckOverflowGuard(const ScaleConfig& cfg, const PublicKey& pk,
                        std::size_t dim, const mpz_class& coeff_max) {
  mpz_class coeff_pow;
  mpz_pow_ui(coeff_pow.get_mpz_t(), coeff_max.get_mpz_t(),
             static_cast<unsigned long>(cfg.max_exp));
  const mpz_class bound = cfg.ScaledBound(cfg.max_exp) *
                          mpz_class(static_cast<unsigned long>(dim)) * coeff_pow;
  if (2 * bound >= pk.n) {
    throw OverflowError("scale configuration overflows a " +
                        std::to_string(pk.bits()) + "-bit key: need " +
                        std::to_string(mpz_sizeinbase(bound.get_mpz_t(), 2) + 1) +
                        " bits of headroom");
  }
}

mpz_class ScaleToInteger(const mpq_class& q, int e, const ScaleConfig& cfg) {
  const mpq_class scaled = q * mpq_class(cfg.DeltaPow(e));
  if (scaled.get_den() != 1) {
    throw RepresentationError("value " + q.get_str() +
                              " is not representable at scale exponent " +
                              std::to_string(e));
  }
  return scaled.get_num();
}

mpz_class SignedResidue(const mpz_class& v, const PublicKey& pk) {
  if (abs(v) > pk.half()) {
    throw OverflowError("magnitude exceeds the signed plaintext window");
  }
  return v < 0 ? mpz_class(pk.n + v) : v;
}

mpz_class SignedValue(const mpz_class& residue, const PublicKey& pk) {
  return residue > pk.half() ? mpz_class(residue - pk.n) : residue;
}

mpz_class EncodeSigned(const mpq_class& q, int e, const PublicKey& pk,
                       const ScaleConfig& cfg) {
  return SignedResidue(ScaleToInteger(q, e, cfg), pk);
}

mpq_class DecodeSigned(const mpz_class& v, int e, const PublicKey& pk,
                       const ScaleConfig& cfg) {
  mpq_class out(SignedValue(v, pk), cfg.DeltaPow(e));
  out.canonicalize();
  return out;
}

CipherMatrix::CipherMatrix(std::size_t rows, std::size_t cols, int scale_exp,
                           std::string key_id, std::vector<mpz_class> cells)
    : rows_(rows),
      cols_(cols),
      scale_exp_(scale_exp),
      key_id_(std::move(key_id)),
      cells_(std::move(cells)) {
  if (cells_.size() != rows_ * cols_) {
    throw DimensionError("cipher matrix cell count does not match dimensions");
  }
}

CipherMatrix EncryptMatrix(const RationalMatrix& m, int e, const PublicKey& pk,
                           const ScaleConfig& cfg, Rng& rng) {
  CheckExponent(e, cfg);
  std::vector<mpz_class> cells;
  cells.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_class residue;
      try {
        residue = EncodeSigned(m(r, c), e, pk, cfg);
      } catch (const OverflowError& err) {
        throw OverflowError(std::string(err.what()) + " at entry " + Coord(r, c));
      } catch (const RepresentationError& err) {
        throw RepresentationError(std::string(err.what()) + " at entry " +
                                  Coord(r, c));
      }
      cells.push_back(Encrypt(pk, residue, rng).value);
    }
  }
  return CipherMatrix(m.rows(), m.cols(), e, pk.key_id, std::move(cells));
}

RationalMatrix DecryptMatrix(const CipherMatrix& c, const PrivateKey& sk,
                             const ScaleConfig& cfg) {
  CheckKey(sk.pub, c);
  CheckExponent(c.scale_exp(), cfg);
  RationalMatrix out(c.rows(), c.cols());
  for (std::size_t r = 0; r < c.rows(); ++r)
    for (std::size_t col = 0; col < c.cols(); ++col)
      out(r, col) = DecodeSigned(Decrypt(sk, c.Cell(r, col)), c.scale_exp(),
                                 sk.pub, cfg);
  return out;
}

CipherMatrix AddCipherMatrix(const PublicKey& pk, const CipherMatrix& a,
                             const CipherMatrix& b) {
  CheckKey(pk, a);
  CheckKey(pk, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("cipher add: shape mismatch");
  }
  if (a.scale_exp() != b.scale_exp()) {
    throw DimensionError("cipher add: scale exponent mismatch");
  }
  std::vector<mpz_class> cells(a.cells().size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    cells[i] = (a.cells()[i] * b.cells()[i]) % pk.n_squared;
  return CipherMatrix(a.rows(), a.cols(), a.scale_exp(), pk.key_id,
                      std::move(cells));
}

CipherMatrix AddPlainMatrix(const PublicKey& pk, const CipherMatrix& a,
                            const RationalMatrix& plain, const ScaleConfig& cfg,
                            Rng& rng) {
  return AddCipherMatrix(pk, a, EncryptMatrix(plain, a.scale_exp(), pk, cfg, rng));
}

CipherMatrix RightApplyMonomial(const PublicKey& pk, const CipherMatrix& a,
                                const Monomial& q, int coeff_exp,
                                const ScaleConfig& cfg) {
  CheckKey(pk, a);
  if (a.cols() != q.dim()) throw DimensionError("right apply: columns != dim Q");
  const int out_exp = a.scale_exp() + coeff_exp;
  CheckExponent(out_exp, cfg);
  std::vector<mpz_class> scalars(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i)
    scalars[i] = ScaleToInteger(q.coeffs()[i], coeff_exp, cfg);
  std::vector<mpz_class> cells(a.cells().size());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t i = 0; i < q.dim(); ++i)
      cells[r * a.cols() + q.perm()[i]] = ScalarMul(pk, a.Cell(r, i), scalars[i]).value;
  return CipherMatrix(a.rows(), a.cols(), out_exp, pk.key_id, std::move(cells));
}

CipherMatrix LeftApplyMonomial(const PublicKey& pk, const Monomial& q,
                               const CipherMatrix& a, int coeff_exp,
                               const ScaleConfig& cfg) {
  CheckKey(pk, a);
  if (a.rows() != q.dim()) throw DimensionError("left apply: dim Q != rows");
  const int out_exp = a.scale_exp() + coeff_exp;
  CheckExponent(out_exp, cfg);
  std::vector<mpz_class> cells(a.cells().size());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    const mpz_class k = ScaleToInteger(q.coeffs()[i], coeff_exp, cfg);
    for (std::size_t c = 0; c < a.cols(); ++c)
      cells[i * a.cols() + c] = ScalarMul(pk, a.Cell(q.perm()[i], c), k).value;
  }
  return CipherMatrix(a.rows(), a.cols(), out_exp, pk.key_id, std::move(cells));
}

CipherMatrix VectorTimesCipher(const PublicKey& pk, const RationalVector& x,
                               int x_exp, const CipherMatrix& a,
                               const ScaleConfig& cfg) {
  CheckKey(pk, a);
  if (x.size() != a.rows()) throw DimensionError("vector-cipher: length != rows");
  const int out_exp = a.scale_exp() + x_exp;
  CheckExponent(out_exp, cfg);
  std::vector<mpz_class> scalars(x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
    scalars[k] = ScaleToInteger(x[k], x_exp, cfg);
  std::vector<mpz_class> cells(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    mpz_class acc = 1;  // trivial encryption of zero
    for (std::size_t k = 0; k < x.size(); ++k) {
      acc = (acc * ScalarMul(pk, a.Cell(k, j), scalars[k]).value) % pk.n_squared;
    }
    cells[j] = acc;
  }
  return CipherMatrix(1, a.cols(), out_exp, pk.key_id, std::move(cells));
}

CipherMatrix RerandomizeMatrix(const PublicKey& pk, const CipherMatrix& a,
                               Rng& rng) {
  CheckKey(pk, a);
  std::vector<mpz_class> cells(a.cells().size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    cells[i] = Rerandomize(pk, Ciphertext{a.cells()[i], a.key_id()}, rng).value;
  return CipherMatrix(a.rows(), a.cols(), a.scale_exp(), pk.key_id,
                      std::move(cells));
}

}  // namespace pplp
