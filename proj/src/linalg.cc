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

#include "pplp/linalg.h"

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "pplp/error.h"

namespace pplp {
namespace {

void RequireSameShape(const RationalMatrix& a, const RationalMatrix& b,
                      const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch");
  }
}

}  // namespace

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols,
                               std::vector<mpq_class> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw DimensionError("matrix entry count does not match dimensions");
  }
}

RationalMatrix RationalMatrix::FromRows(
    const std::vector<std::vector<mpq_class>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  RationalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix RationalMatrix::Identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::RowVector(const RationalVector& v) {
  return RationalMatrix(1, v.size(), v);
}

RationalMatrix RationalMatrix::ColumnVector(const RationalVector& v) {
  return RationalMatrix(v.size(), 1, v);
}

RationalVector RationalMatrix::Row(std::size_t r) const {
  return RationalVector(entries_.begin() + r * cols_,
                        entries_.begin() + (r + 1) * cols_);
}

RationalVector RationalMatrix::Column(std::size_t c) const {
  RationalVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

RationalMatrix RationalMatrix::Transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool RationalMatrix::IsZero() const {
  for (const auto& e : entries_)
    if (e != 0) return false;
  return true;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  RequireSameShape(a, b, "matrix add");
  RationalMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    out.entries()[i] = a.entries()[i] + b.entries()[i];
  return out;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  RequireSameShape(a, b, "matrix subtract");
  RationalMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    out.entries()[i] = a.entries()[i] - b.entries()[i];
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix multiply: inner dimension mismatch");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

RationalVector operator*(const RationalMatrix& a, const RationalVector& x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector: dimension mismatch");
  RationalVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
  return out;
}

RationalVector operator+(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector add: length mismatch");
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RationalVector operator-(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector subtract: length mismatch");
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

mpq_class Dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RationalVector LeftMultiply(const RationalVector& x, const RationalMatrix& a) {
  if (x.size() != a.rows()) throw DimensionError("vector-matrix: dimension mismatch");
  RationalVector out(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += x[i] * a(i, j);
  return out;
}

RationalVector ZeroVector(std::size_t n) { return RationalVector(n); }

std::string ToString(const RationalVector& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i].get_str();
  }
  return os.str();
}

std::string ToString(const RationalMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) os << ToString(m.Row(r)) << '\n';
  return os.str();
}

Monomial::Monomial(std::vector<std::size_t> perm, std::vector<mpq_class> coeffs)
    : perm_(std::move(perm)), coeffs_(std::move(coeffs)) {
  if (perm_.size() != coeffs_.size()) {
    throw std::invalid_argument("monomial: perm and coeffs differ in length");
  }
  std::vector<bool> seen(perm_.size(), false);
  for (std::size_t p : perm_) {
    if (p >= perm_.size() || seen[p]) {
      throw std::invalid_argument("monomial: perm is not a bijection");
    }
    seen[p] = true;
  }
  for (const auto& q : coeffs_) {
    if (q <= 0) throw std::invalid_argument("monomial: coefficients must be positive");
  }
}

Monomial Monomial::Identity(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  return Monomial(std::move(perm), std::vector<mpq_class>(n, mpq_class(1)));
}

Monomial Monomial::FromDense(const RationalMatrix& dense) {
  if (dense.rows() != dense.cols()) throw DimensionError("monomial must be square");
  const std::size_t n = dense.rows();
  std::vector<std::size_t> perm(n);
  std::vector<mpq_class> coeffs(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t nonzeros = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (dense(i, j) != 0) {
        ++nonzeros;
        perm[i] = j;
        coeffs[i] = dense(i, j);
      }
    }
    if (nonzeros != 1) {
      throw std::invalid_argument("row " + std::to_string(i) +
                                  " does not have exactly one nonzero");
    }
  }
  return Monomial(std::move(perm), std::move(coeffs));
}

bool Monomial::IsIntegral() const {
  for (const auto& q : coeffs_)
    if (q.get_den() != 1) return false;
  return true;
}

bool Monomial::IsPermutation() const {
  for (const auto& q : coeffs_)
    if (q != 1) return false;
  return true;
}

RationalMatrix Monomial::Dense() const {
  RationalMatrix d(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) d(i, perm_[i]) = coeffs_[i];
  return d;
}

std::vector<std::size_t> RandomPermutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.Index(i)]);
  }
  return perm;
}

Monomial GenerateMonomialWithPerm(const std::vector<std::size_t>& perm,
                                  const mpz_class& lo, const mpz_class& hi,
                                  Rng& rng) {
  if (lo < 1 || hi < lo) {
    throw std::invalid_argument("coefficient range must satisfy 1 <= lo <= hi");
  }
  std::vector<mpq_class> coeffs(perm.size());
  for (auto& q : coeffs) q = mpq_class(rng.Range(lo, hi));
  return Monomial(perm, std::move(coeffs));
}

Monomial GenerateMonomial(std::size_t n, const mpz_class& lo,
                          const mpz_class& hi, Rng& rng) {
  if (n == 0) throw std::invalid_argument("monomial dimension must be >= 1");
  if (lo < 1 || hi < lo) {
    throw std::invalid_argument("coefficient range must satisfy 1 <= lo <= hi");
  }
  auto perm = RandomPermutation(n, rng);
  return GenerateMonomialWithPerm(perm, lo, hi, rng);
}

RationalMatrix RightApply(const RationalMatrix& m, const Monomial& q) {
  if (m.cols() != q.dim()) throw DimensionError("right apply: M columns != dim Q");
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t i = 0; i < q.dim(); ++i)
      out(r, q.perm()[i]) = m(r, i) * q.coeffs()[i];
  return out;
}

RationalVector RightApply(const RationalVector& x, const Monomial& q) {
  return RightApply(RationalMatrix::RowVector(x), q).entries();
}

RationalVector Apply(const Monomial& q, const RationalVector& y) {
  if (y.size() != q.dim()) throw DimensionError("apply: dim Q != vector length");
  RationalVector out(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) out[i] = q.coeffs()[i] * y[q.perm()[i]];
  return out;
}

Monomial Compose(const Monomial& a, const Monomial& b) {
  if (a.dim() != b.dim()) throw DimensionError("compose: dimension mismatch");
  std::vector<std::size_t> perm(a.dim());
  std::vector<mpq_class> coeffs(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const std::size_t mid = a.perm()[i];
    perm[i] = b.perm()[mid];
    coeffs[i] = a.coeffs()[i] * b.coeffs()[mid];
  }
  return Monomial(std::move(perm), std::move(coeffs));
}

Monomial Invert(const Monomial& q) {
  std::vector<std::size_t> perm(q.dim());
  std::vector<mpq_class> coeffs(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    perm[q.perm()[i]] = i;
    coeffs[q.perm()[i]] = 1 / q.coeffs()[i];
  }
  return Monomial(std::move(perm), std::move(coeffs));
}

Monomial AddSamePerm(const Monomial& a, const Monomial& b) {
  if (a.perm() != b.perm()) {
    throw std::invalid_argument("monomial sum requires a shared permutation");
  }
  std::vector<mpq_class> coeffs(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) coeffs[i] = a.coeffs()[i] + b.coeffs()[i];
  return Monomial(a.perm(), std::move(coeffs));
}

}  // namespace pplp
