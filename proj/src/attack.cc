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

#include "pplp/attack.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "pplp/error.h"
#include "pplp/protocols.h"

namespace pplp {
namespace {

class Enumerator {
 public:
  explicit Enumerator(const AttackInput& in) : in_(in), n_(in.c_q.size()) {
    perm_.resize(n_);
    coeffs_.resize(n_);
    determined_.resize(n_);
    used_.assign(n_, false);
  }

  std::vector<AttackCandidate> Run() {
    Extend(0);
    return std::move(out_);
  }

 private:
  // Assigns row i to column j if the evidence allows it.
  bool Fits(std::size_t i, std::size_t j) {
    std::optional<mpq_class> q;
    if (in_.c) {
      const mpq_class& ci = (*in_.c)[i];
      const mpq_class& target = in_.c_q[j];
      if (ci == 0) {
        if (target != 0) return false;
      } else {
        q = target / ci;
        if (*q <= 0) return false;
      }
    }
    if (in_.x_star && in_.y_star) {
      const mpq_class& xi = (*in_.x_star)[i];
      const mpq_class& yj = (*in_.y_star)[j];
      if (yj == 0) {
        if (xi != 0) return false;
      } else if (q) {
        if (*q * yj != xi) return false;
      } else {
        q = xi / yj;
        if (*q <= 0) return false;
      }
    }
    coeffs_[i] = q ? *q : mpq_class(1);
    determined_[i] = q.has_value();
    return true;
  }

  void Extend(std::size_t i) {
    if (i == n_) {
      out_.push_back(AttackCandidate{Monomial(perm_, coeffs_), determined_});
      return;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      if (used_[j] || !Fits(i, j)) continue;
      used_[j] = true;
      perm_[i] = j;
      Extend(i + 1);
      used_[j] = false;
    }
  }

  const AttackInput& in_;
  std::size_t n_;
  std::vector<std::size_t> perm_;
  std::vector<mpq_class> coeffs_;
  std::vector<bool> determined_;
  std::vector<bool> used_;
  std::vector<AttackCandidate> out_;
};

bool Invertible(const RationalMatrix& a) {
  RationalMatrix m = a;
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return false;
    for (std::size_t k = 0; k < n; ++k) std::swap(m(col, k), m(pivot, k));
    for (std::size_t r = col + 1; r < n; ++r) {
      const mpq_class f = m(r, col) / m(col, col);
      for (std::size_t k = col; k < n; ++k) m(r, k) -= f * m(col, k);
    }
  }
  return true;
}

}  // namespace

bool AttackCandidate::fully_determined() const {
  return std::all_of(determined.begin(), determined.end(), [](bool d) { return d; });
}

AttackResult BednarzEnumerate(const AttackInput& input) {
  const std::size_t n = input.c_q.size();
  if (n == 0) throw DimensionError("attack: empty cTQ");
  if (n > kMaxAttackDim) {
    throw std::invalid_argument("attack: n = " + std::to_string(n) + " exceeds the enumeration bound " +
                                std::to_string(kMaxAttackDim));
  }
  for (const auto* v : {&input.c, &input.y_star, &input.x_star}) {
    if (*v && (*v)->size() != n) throw DimensionError("attack: evidence vectors differ in length");
  }
  AttackResult result;
  result.candidates = Enumerator(input).Run();
  result.unique = result.candidates.size() == 1 && result.candidates.front().fully_determined();
  return result;
}

AttackInput EvidenceFromTranscript(const Transcript& transcript, PartyId attacker,
                                   const SideKnowledge& side) {
  AttackInput in;
  const LogEntry* cq = transcript.FindLog(attacker, steps::kDecryptCQ);
  if (cq == nullptr) throw SessionError(ToString(attacker) + " holds no transformed objective");
  in.c_q = cq->values;
  if (const LogEntry* y = transcript.FindLog(attacker, steps::kSolutionY)) in.y_star = y->values;
  if (const LogEntry* x = transcript.FindLog(attacker, steps::kSolutionX)) in.x_star = x->values;
  if (side.c) in.c = side.c;
  if (side.x_star) in.x_star = side.x_star;
  return in;
}

AttackResult AuditProtocolRun(const Transcript& transcript, PartyId attacker,
                              AttackScenario scenario, const SideKnowledge& side) {
  AttackInput in = EvidenceFromTranscript(transcript, attacker, side);
  if (scenario == AttackScenario::kTwoPartyArbitrary && !side.c) {
    // cᵀ is split between the parties; no single view holds it.
    in.c.reset();
  }
  return BednarzEnumerate(in);
}

GenericInstance GenerateGenericInstance(std::size_t n, Rng& rng, long entry_bound) {
  const mpz_class lo = -entry_bound;
  const mpz_class hi = entry_bound;
  for (;;) {
    RationalMatrix m(n, n);
    for (auto& v : m.entries()) v = mpq_class(rng.Range(lo, hi));
    if (!Invertible(m)) continue;
    RationalVector x(n);
    RationalVector lambda(n);
    for (auto& v : x) v = mpq_class(rng.Range(1, hi));
    for (auto& v : lambda) v = mpq_class(rng.Range(1, hi));
    RationalVector c = LeftMultiply(lambda, m);
    for (auto& v : c) v = -v;
    std::set<mpq_class> distinct(c.begin(), c.end());
    if (distinct.size() != n || distinct.count(0) != 0) continue;
    // Equal products c_i·x_i let two rows swap consistently.
    std::set<mpq_class> products;
    for (std::size_t i = 0; i < n; ++i) products.insert(c[i] * x[i]);
    if (products.size() != n) continue;
    return GenericInstance{LpProblem{c, m, m * x, false}, x};
  }
}

}  // namespace pplp
