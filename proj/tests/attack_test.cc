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

#include <gtest/gtest.h>

#include "pplp/error.h"
#include "pplp/protocols.h"
#include "test_util.h"

namespace pplp {
namespace {

struct Disclosure {
  Monomial q;
  AttackInput full;
};

// Plaintext view of a transformation disclosure for a generic instance.
Disclosure MakeDisclosure(std::size_t n, Rng& rng) {
  const GenericInstance g = GenerateGenericInstance(n, rng);
  const Monomial q = GenerateMonomial(n, 1, 1000, rng);
  const LpSolution y = SimplexSolve(TransformProblem(g.problem, q));
  EXPECT_EQ(y.status, LpStatus::kOptimal);
  AttackInput in;
  in.c = g.problem.c;
  in.c_q = RightApply(g.problem.c, q);
  in.y_star = y.x;
  in.x_star = Apply(q, y.x);
  EXPECT_EQ(*in.x_star, g.x_star);
  return {q, in};
}

void ExpectSound(const AttackInput& in, const AttackResult& r) {
  for (const auto& cand : r.candidates) {
    if (in.c) {
      const RationalVector cq = RightApply(*in.c, cand.q);
      for (std::size_t i = 0; i < cand.q.dim(); ++i) {
        if (cand.determined[i] || (*in.c)[i] != 0) {
          EXPECT_EQ(cq[cand.q.perm()[i]], in.c_q[cand.q.perm()[i]]);
        }
      }
    }
    if (in.x_star && in.y_star) EXPECT_EQ(Apply(cand.q, *in.y_star), *in.x_star);
  }
}

bool Contains(const AttackResult& r, const Monomial& q) {
  return std::any_of(r.candidates.begin(), r.candidates.end(), [&](const AttackCandidate& c) {
    if (c.q.perm() != q.perm()) return false;
    for (std::size_t i = 0; i < q.dim(); ++i)
      if (c.determined[i] && c.q.coeffs()[i] != q.coeffs()[i]) return false;
    return true;
  });
}

TEST(GenericInstanceTest, HasUniquePositiveOptimum) {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const GenericInstance g = GenerateGenericInstance(4, rng);
    const LpSolution s = SimplexSolve(g.problem);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    EXPECT_EQ(s.x, g.x_star);
    EXPECT_EQ(testing::VertexEnumerationOracle(g.problem).objective, s.objective);
    std::set<mpq_class> distinct(g.problem.c.begin(), g.problem.c.end());
    EXPECT_EQ(distinct.size(), 4u);
    EXPECT_EQ(distinct.count(0), 0u);
    std::set<mpq_class> products;
    for (std::size_t i = 0; i < 4; ++i) products.insert(g.problem.c[i] * g.x_star[i]);
    EXPECT_EQ(products.size(), 4u);
  }
}

TEST(BednarzTest, FullEvidenceRecoversQ) {
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const Disclosure d = MakeDisclosure(4, rng);
    const AttackResult r = BednarzEnumerate(d.full);
    ASSERT_TRUE(r.unique);
    EXPECT_EQ(r.candidates.front().q, d.q);
  }
}

TEST(BednarzTest, ObjectiveOnlyLeavesAmbiguity) {
  AttackInput in;
  in.c_q = {3, 5, 7};
  const AttackResult r = BednarzEnumerate(in);
  EXPECT_EQ(r.candidates.size(), 6u);
  EXPECT_FALSE(r.unique);
  for (const auto& c : r.candidates) EXPECT_FALSE(c.fully_determined());
}

TEST(BednarzTest, SingleDimension) {
  AttackInput in;
  in.c = RationalVector{2};
  in.c_q = {14};
  const AttackResult r = BednarzEnumerate(in);
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_TRUE(r.unique);
  EXPECT_EQ(r.candidates.front().q, Monomial({0}, {7}));
  in.c.reset();
  EXPECT_EQ(BednarzEnumerate(in).candidates.size(), 1u);
}

TEST(BednarzTest, SoundAndCompleteOnEvidenceSubsets) {
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 2 + rng.Index(4);
    const Disclosure d = MakeDisclosure(n, rng);
    for (int mask = 0; mask < 4; ++mask) {
      AttackInput in;
      in.c_q = d.full.c_q;
      if (mask & 1) in.c = d.full.c;
      if (mask & 2) {
        in.y_star = d.full.y_star;
        in.x_star = d.full.x_star;
      }
      const AttackResult r = BednarzEnumerate(in);
      ExpectSound(in, r);
      EXPECT_TRUE(Contains(r, d.q)) << "n=" << n << " mask=" << mask;
    }
  }
}

TEST(BednarzTest, DegenerateObjectiveIsAmbiguous) {
  // Repeated entries in c let two permutations explain cᵀQ.
  AttackInput in;
  in.c = RationalVector{1, 1};
  in.c_q = {3, 3};
  const AttackResult r = BednarzEnumerate(in);
  EXPECT_EQ(r.candidates.size(), 2u);
  EXPECT_FALSE(r.unique);
}

TEST(BednarzTest, EqualProductsAreAmbiguous) {
  // c has distinct entries but c_2·x_2 = c_3·x_3 = -10.
  LpProblem p;
  p.c = {-8, -5, -10, -7};
  p.m = RationalMatrix::FromRows({{1, 2, 0, 1}, {0, 1, 3, 0}, {2, 0, 1, 1}, {1, 1, 1, 3}});
  p.b = {6, 5, 4, 7};
  const Monomial q({2, 0, 3, 1}, {5, 7, 11, 13});
  const LpSolution y = SimplexSolve(TransformProblem(p, q));
  ASSERT_EQ(Apply(q, y.x), (RationalVector{1, 2, 1, 1}));
  AttackInput in{p.c, RightApply(p.c, q), y.x, Apply(q, y.x)};
  const AttackResult r = BednarzEnumerate(in);
  EXPECT_EQ(r.candidates.size(), 2u);
  EXPECT_FALSE(r.unique);
  EXPECT_TRUE(Contains(r, q));
}

TEST(BednarzTest, Errors) {
  AttackInput in;
  in.c_q = RationalVector(10, 1);
  EXPECT_THROW(BednarzEnumerate(in), std::invalid_argument);
  in.c_q = {1, 2};
  in.c = RationalVector{1};
  EXPECT_THROW(BednarzEnumerate(in), DimensionError);
  in.c_q = {};
  in.c.reset();
  EXPECT_THROW(BednarzEnumerate(in), DimensionError);
}

TEST(BednarzTest, NineDimensionsIsTractable) {
  Rng rng(4);
  AttackInput in;
  in.c_q.resize(9);
  for (auto& v : in.c_q) v = mpq_class(rng.Range(1, 100));
  EXPECT_EQ(BednarzEnumerate(in).candidates.size(), 362880u);
}

ProtocolConfig AuditConfig() {
  ProtocolConfig cfg;
  cfg.key_bits = 256;
  return cfg;
}

TEST(AuditTest, ObjectiveConstraintSplitLeaksQ) {
  Rng rng(5);
  const GenericInstance g = GenerateGenericInstance(4, rng);
  const auto run = RunObjectiveConstraintSplit(g.problem, AuditConfig(), 21);
  SideKnowledge side;
  side.c = g.problem.c;
  const AttackResult r =
      AuditProtocolRun(run.transcript, PartyId{2}, AttackScenario::kObjectiveConstraintSplit, side);
  ASSERT_TRUE(r.unique);
  EXPECT_EQ(r.candidates.front().q, run.q);
}

TEST(AuditTest, ArbitraryPartitionResists) {
  Rng rng(6);
  const GenericInstance g = GenerateGenericInstance(4, rng);
  const auto shares = SharesFromPartition(testing::RandomSplit(g.problem, 2, rng, 20, 1 << 10));
  ProtocolConfig cfg = AuditConfig();
  cfg.mode = ReconstructMode::kShares;
  const auto run = RunTwoPartyArbitrary(shares, cfg, 22);
  const AttackResult r =
      AuditProtocolRun(run.transcript, PartyId{1}, AttackScenario::kTwoPartyArbitrary);
  EXPECT_FALSE(r.unique);
  EXPECT_GE(r.candidates.size(), 2u);
  EXPECT_TRUE(Contains(r, run.q));

  // Leaking x* alone still leaves every permutation consistent.
  SideKnowledge x_only;
  x_only.x_star = g.x_star;
  EXPECT_FALSE(AuditProtocolRun(run.transcript, PartyId{1}, AttackScenario::kTwoPartyArbitrary, x_only).unique);

  // Negative control: injecting x* and cᵀ restores recovery.
  SideKnowledge leaked = x_only;
  leaked.c = g.problem.c;
  const AttackResult control =
      AuditProtocolRun(run.transcript, PartyId{1}, AttackScenario::kTwoPartyArbitrary, leaked);
  ASSERT_TRUE(control.unique);
  EXPECT_EQ(control.candidates.front().q, run.q);
}

TEST(AuditTest, MissingEvidenceIsReported) {
  Rng rng(7);
  const GenericInstance g = GenerateGenericInstance(3, rng);
  const auto run = RunObjectiveConstraintSplit(g.problem, AuditConfig(), 23);
  EXPECT_THROW(EvidenceFromTranscript(run.transcript, PartyId{1}), SessionError);
}

}  // namespace
}  // namespace pplp
