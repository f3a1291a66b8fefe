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

#ifndef PPLP_ENCODING_H_
#define PPLP_ENCODING_H_

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pplp/crypto.h"
#include "pplp/linalg.h"
#include "pplp/random.h"

namespace pplp {

// Signed fixed-point layout of rationals in Z_n. A value q at scale exponent e
// is stored as the residue of q * delta^e; residues above n/2 are negative.
struct ScaleConfig {
  unsigned delta_exp = 20;   // delta = 2^delta_exp
  int max_exp = 3;
  // Public bound on the magnitude of any LP input entry.
  mpq_class max_magnitude = mpq_class(1 << 20);

  mpz_class delta() const;
  mpz_class DeltaPow(int e) const;
  // delta^e * max_magnitude, rounded up: bound on |encoded input| at scale e.
  mpz_class ScaledBound(int e) const;
};

// Fails with OverflowError when
//   delta^max_exp * max_magnitude * dim * coeff_max^max_exp >= n / 2.
void CheckOverflowGuard(const ScaleConfig& cfg, const PublicKey& pk,
                        std::size_t dim, const mpz_class& coeff_max);

// q * delta^e, must be an integer (RepresentationError) of magnitude at most
// floor((n - 1) / 2) (OverflowError).
mpz_class ScaleToInteger(const mpq_class& q, int e, const ScaleConfig& cfg);
mpz_class EncodeSigned(const mpq_class& q, int e, const PublicKey& pk,
                       const ScaleConfig& cfg);
mpq_class DecodeSigned(const mpz_class& v, int e, const PublicKey& pk,
                       const ScaleConfig& cfg);
// Residue in [0, n) of a signed integer whose magnitude is below n / 2.
mpz_class SignedResidue(const mpz_class& v, const PublicKey& pk);
mpz_class SignedValue(const mpz_class& residue, const PublicKey& pk);

// Matrix of ciphertexts under one key at one scale exponent.
class CipherMatrix {
 public:
  CipherMatrix() = default;
  CipherMatrix(std::size_t rows, std::size_t cols, int scale_exp,
               std::string key_id, std::vector<mpz_class> cells);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int scale_exp() const { return scale_exp_; }
  const std::string& key_id() const { return key_id_; }
  const std::vector<mpz_class>& cells() const { return cells_; }

  Ciphertext Cell(std::size_t r, std::size_t c) const {
    return Ciphertext{cells_[r * cols_ + c], key_id_};
  }
  const mpz_class& value(std::size_t r, std::size_t c) const {
    return cells_[r * cols_ + c];
  }

  friend bool operator==(const CipherMatrix&, const CipherMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int scale_exp_ = 0;
  std::string key_id_;
  std::vector<mpz_class> cells_;
};

// Encode errors are rethrown naming the offending (row, col).
CipherMatrix EncryptMatrix(const RationalMatrix& m, int e, const PublicKey& pk,
                           const ScaleConfig& cfg, Rng& rng);
RationalMatrix DecryptMatrix(const CipherMatrix& c, const PrivateKey& sk,
                             const ScaleConfig& cfg);

// Homomorphic matrix algebra. All results are freshly rerandomized only where
// noted; callers that forward ciphertexts call Rerandomize explicitly.
CipherMatrix AddCipherMatrix(const PublicKey& pk, const CipherMatrix& a,
                             const CipherMatrix& b);
// a + Enc(plain) with plain encoded at a's scale exponent.
CipherMatrix AddPlainMatrix(const PublicKey& pk, const CipherMatrix& a,
                            const RationalMatrix& plain, const ScaleConfig& cfg,
                            Rng& rng);
// Enc(M) -> Enc(M·Q). Coefficients are encoded at coeff_exp, so the result
// sits at scale a.scale_exp() + coeff_exp. One exponentiation per cell.
CipherMatrix RightApplyMonomial(const PublicKey& pk, const CipherMatrix& a,
                                const Monomial& q, int coeff_exp,
                                const ScaleConfig& cfg);
// Enc(Y) -> Enc(Q·Y) for an n x k matrix Y (k = 1 for a column vector).
CipherMatrix LeftApplyMonomial(const PublicKey& pk, const Monomial& q,
                               const CipherMatrix& a, int coeff_exp,
                               const ScaleConfig& cfg);
// Enc(A) -> Enc(xᵀA) for a plaintext row vector x encoded at x_exp.
CipherMatrix VectorTimesCipher(const PublicKey& pk, const RationalVector& x,
                               int x_exp, const CipherMatrix& a,
                               const ScaleConfig& cfg);
CipherMatrix RerandomizeMatrix(const PublicKey& pk, const CipherMatrix& a,
                               Rng& rng);

}  // namespace pplp

#endif  // PPLP_ENCODING_H_
