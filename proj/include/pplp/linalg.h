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

#ifndef PPLP_LINALG_H_
#define PPLP_LINALG_H_

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pplp/random.h"

namespace pplp {

using RationalVector = std::vector<mpq_class>;

// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::size_t rows, std::size_t cols,
                 std::vector<mpq_class> entries);
  static RationalMatrix FromRows(
      const std::vector<std::vector<mpq_class>>& rows);
  static RationalMatrix Identity(std::size_t n);
  static RationalMatrix RowVector(const RationalVector& v);
  static RationalMatrix ColumnVector(const RationalVector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return entries_.empty(); }

  mpq_class& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  const mpq_class& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  const std::vector<mpq_class>& entries() const { return entries_; }
  std::vector<mpq_class>& entries() { return entries_; }

  RationalVector Row(std::size_t r) const;
  RationalVector Column(std::size_t c) const;
  RationalMatrix Transposed() const;
  bool IsZero() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> entries_;
};

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalVector operator*(const RationalMatrix& a, const RationalVector& x);
RationalVector operator+(const RationalVector& a, const RationalVector& b);
RationalVector operator-(const RationalVector& a, const RationalVector& b);
mpq_class Dot(const RationalVector& a, const RationalVector& b);
// xᵀA, i.e. the row vector x times A.
RationalVector LeftMultiply(const RationalVector& x, const RationalMatrix& a);
RationalVector ZeroVector(std::size_t n);

std::string ToString(const RationalMatrix& m);
std::string ToString(const RationalVector& v);

// Generalized permutation matrix: entry (i, perm[i]) is coeffs[i] > 0 and all
// other entries are zero. Coefficients are rational so that inverses stay in
// the same type; generated matrices always have integer coefficients.
class Monomial {
 public:
  Monomial() = default;
  // Throws std::invalid_argument if perm is not a bijection on {0..n-1} or a
  // coefficient is not positive.
  Monomial(std::vector<std::size_t> perm, std::vector<mpq_class> coeffs);
  static Monomial Identity(std::size_t n);
  static Monomial FromDense(const RationalMatrix& dense);

  std::size_t dim() const { return perm_.size(); }
  const std::vector<std::size_t>& perm() const { return perm_; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  bool IsIntegral() const;
  bool IsPermutation() const;

  RationalMatrix Dense() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::size_t> perm_;
  std::vector<mpq_class> coeffs_;
};

// Uniform permutation (Fisher-Yates), coefficients uniform in [lo, hi].
Monomial GenerateMonomial(std::size_t n, const mpz_class& lo,
                          const mpz_class& hi, Rng& rng);
// Coefficients uniform in [lo, hi] for a fixed permutation.
Monomial GenerateMonomialWithPerm(const std::vector<std::size_t>& perm,
                                  const mpz_class& lo, const mpz_class& hi,
                                  Rng& rng);
std::vector<std::size_t> RandomPermutation(std::size_t n, Rng& rng);

// M·Q: column perm[i] of the result is coeffs[i] times column i of M.
RationalMatrix RightApply(const RationalMatrix& m, const Monomial& q);
// xᵀQ for a row vector x.
RationalVector RightApply(const RationalVector& x, const Monomial& q);
// Q·y: (Qy)_i = coeffs[i] * y[perm[i]].
RationalVector Apply(const Monomial& q, const RationalVector& y);
// Dense(Compose(a, b)) == Dense(a) * Dense(b).
Monomial Compose(const Monomial& a, const Monomial& b);
Monomial Invert(const Monomial& q);
// Sum of two monomials sharing one permutation.
Monomial AddSamePerm(const Monomial& a, const Monomial& b);

}  // namespace pplp

#endif  // PPLP_LINALG_H_
