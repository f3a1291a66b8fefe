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

#include "pplp/protocols.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "pplp/error.h"
#include "pplp/wire.h"
#include "test_util.h"

namespace pplp {
namespace {

using testing::DantzigProblem;
using testing::RandomFeasibleLp;
using testing::RandomSplit;

constexpr int kBits = 256;

ProtocolConfig SmallConfig() {
  ProtocolConfig cfg;
  cfg.key_bits = kBits;
  return cfg;
}

std::multiset<std::string> ReceivedKinds(const Transcript& t, PartyId p,
                                         const std::string& prefix = "") {
  std::multiset<std::string> kinds;
  for (const auto& m : t.party(p).received)
    if (m.kind.rfind(prefix, 0) == 0) kinds.insert(m.kind);
  return kinds;
}

std::set<std::string> DecryptedSteps(const Transcript& t, PartyId p, const std::string& prefix) {
  std::set<std::string> out;
  for (const auto& e : t.party(p).log)
    if (e.category == LogCategory::kDecrypted && e.step.rfind(prefix, 0) == 0) out.insert(e.step);
  return out;
}

TEST(ScalarProductTest, SharesSumToDotProduct) {
  ScalarProductOptions opt;
  opt.key_bits = kBits;
  const std::vector<mpz_class> x{3, -7, 11, 0};
  const std::vector<mpz_class> y{-2, 5, 4, 9};
  const auto r = SecureScalarProduct(x, y, opt, 17);
  EXPECT_EQ(r.r_a + r.r_b, mpz_class(3 * -2 + -7 * 5 + 11 * 4));
  EXPECT_NE(r.r_b, 0);
}

TEST(ScalarProductTest, RejectsLengthMismatchAndOverflow) {
  ScalarProductOptions opt;
  opt.key_bits = kBits;
  EXPECT_THROW(SecureScalarProduct({1, 2}, {1}, opt, 1), DimensionError);
  opt.entry_bound = 10;
  EXPECT_THROW(SecureScalarProduct({11}, {1}, opt, 1), OverflowError);
  opt.entry_bound = mpz_class(1) << 200;
  EXPECT_THROW(SecureScalarProduct({1}, {1}, opt, 1), OverflowError);
}

TEST(HomomorphicRightMulTest, MatchesDenseProduct) {
  Rng rng(5);
  const KeyPair kp = GenerateKeyPair(kBits, rng);
  const ScaleConfig cfg;
  Rng data(9);
  RationalMatrix a(3, 4);
  for (auto& v : a.entries()) v = testing::RandomEntry(data, 50, 1 << 20);
  const Monomial q = GenerateMonomial(4, 1, 1000, data);
  RationalMatrix mask(3, 4);
  for (auto& v : mask.entries()) v = testing::RandomEntry(data, 50, 1 << 20);
  const CipherMatrix enc = EncryptMatrix(a, 1, kp.pub, cfg, rng);
  const auto out = HomomorphicRightMul(kp.pub, enc, q, &mask, cfg, rng);
  EXPECT_EQ(DecryptMatrix(out, kp.priv, cfg), a * q.Dense() + mask);
  const auto plain = HomomorphicRightMul(kp.pub, enc, q, nullptr, cfg, rng);
  EXPECT_EQ(DecryptMatrix(plain, kp.priv, cfg), a * q.Dense());
}

TEST(ObjectiveConstraintSplitTest, Dantzig) {
  const auto r = RunObjectiveConstraintSplit(DantzigProblem(), SmallConfig(), 1);
  ASSERT_EQ(r.status(), LpStatus::kOptimal);
  EXPECT_EQ(r.objective(), -36);
  EXPECT_EQ(r.solution(), (RationalVector{2, 6}));
  EXPECT_EQ(r.at(PartyId{1}).x, r.at(PartyId{2}).x);
  // The solver's problem is the original transformed by Q1 + Q2.
  const auto& t = r.at(PartyId{2}).transformed->problem;
  EXPECT_EQ(t.m, DantzigProblem().m * r.q.Dense());
  EXPECT_EQ(t.c, LeftMultiply(DantzigProblem().c, r.q.Dense()));
}

TEST(ObjectiveConstraintSplitTest, MessageKinds) {
  const auto r = RunObjectiveConstraintSplit(DantzigProblem(), SmallConfig(), 2);
  const std::multiset<std::string> to_p1{kinds::kSetupPerm, kinds::kPk, kinds::kEncMQ2,
                                         kinds::kEncQ2, kinds::kEncM};
  const std::multiset<std::string> to_p2{kinds::kEncS, kinds::kEncV};
  EXPECT_EQ(ReceivedKinds(r.transcript, PartyId{1}, "setup/"), std::multiset<std::string>{kinds::kSetupPerm});
  auto p1 = ReceivedKinds(r.transcript, PartyId{1}, "transform/");
  p1.insert(kinds::kSetupPerm);
  EXPECT_EQ(p1, to_p1);
  EXPECT_EQ(ReceivedKinds(r.transcript, PartyId{2}, "transform/"), to_p2);
  EXPECT_EQ(DecryptedSteps(r.transcript, PartyId{1}, "transform/"), std::set<std::string>{});
}

TEST(ObjectiveConstraintSplitTest, SolverMustBeConstraintHolder) {
  ProtocolConfig cfg = SmallConfig();
  cfg.solver_party = 1;
  EXPECT_THROW(RunObjectiveConstraintSplit(DantzigProblem(), cfg, 1), std::invalid_argument);
}

TEST(ObjectiveConstraintSplitTest, PermutationMismatchDetected) {
  ProtocolConfig cfg = SmallConfig();
  cfg.fixed_q = {Monomial({0, 1}, {2, 3}), Monomial({1, 0}, {5, 7})};
  EXPECT_THROW(RunObjectiveConstraintSplit(DantzigProblem(), cfg, 1), std::invalid_argument);
  cfg.fixed_q = {Monomial({1, 0}, {2, 3}), Monomial({1, 0}, {5, 7})};
  const auto r = RunObjectiveConstraintSplit(DantzigProblem(), cfg, 1);
  EXPECT_EQ(r.q, Monomial({1, 0}, {7, 10}));
  EXPECT_EQ(r.objective(), -36);
}

TEST(ObjectiveConstraintSplitTest, RandomInstancesMatchCentralized) {
  Rng rng(101);
  for (int trial = 0; trial < 8; ++trial) {
    const LpProblem p = RandomFeasibleLp(rng, 3, 3, 9, 4, trial % 2 == 0);
    const LpSolution central = SimplexSolve(p);
    const auto r = RunObjectiveConstraintSplit(p, SmallConfig(), 200 + trial);
    ASSERT_EQ(r.status(), central.status) << trial;
    if (central.status != LpStatus::kOptimal) continue;
    EXPECT_EQ(r.objective(), central.objective);
    EXPECT_TRUE(VerifySolution(p, r.solution()).feasible);
    EXPECT_EQ(Dot(p.c, r.solution()), central.objective);
  }
}

TEST(ObjectiveConstraintSplitTest, StatusReachesBothParties) {
  LpProblem infeasible;
  infeasible.c = {1};
  infeasible.m = RationalMatrix::FromRows({{1}});
  infeasible.b = {-1};
  const auto r = RunObjectiveConstraintSplit(infeasible, SmallConfig(), 3);
  EXPECT_EQ(r.at(PartyId{1}).status, LpStatus::kInfeasible);
  EXPECT_EQ(r.at(PartyId{2}).status, LpStatus::kInfeasible);
  LpProblem unbounded;
  unbounded.c = {-1, 0};
  unbounded.m = RationalMatrix::FromRows({{0, 1}});
  unbounded.b = {1};
  const auto u = RunObjectiveConstraintSplit(unbounded, SmallConfig(), 3);
  EXPECT_EQ(u.at(PartyId{1}).status, LpStatus::kUnbounded);
}

TEST(ObjectiveConstraintSplitTest, SharesModeSumsToSolution) {
  ProtocolConfig cfg = SmallConfig();
  cfg.mode = ReconstructMode::kShares;
  const auto r = RunObjectiveConstraintSplit(DantzigProblem(), cfg, 4);
  EXPECT_EQ(r.solution(), (RationalVector{2, 6}));
  EXPECT_NE(r.at(PartyId{1}).x, (RationalVector{2, 6}));
  EXPECT_EQ(r.transcript.FindLog(PartyId{2}, steps::kSolutionX), nullptr);
}

std::vector<PartyShare> SplitShares(const LpProblem& p, std::size_t parties, Rng& rng) {
  return SharesFromPartition(RandomSplit(p, parties, rng, 20, 1 << 10));
}

TEST(TwoPartyArbitraryTest, DantzigSplit) {
  Rng rng(7);
  const auto shares = SplitShares(DantzigProblem(), 2, rng);
  const auto r = RunTwoPartyArbitrary(shares, SmallConfig(), 11);
  ASSERT_EQ(r.status(), LpStatus::kOptimal);
  EXPECT_EQ(r.objective(), -36);
  EXPECT_EQ(r.solution(), (RationalVector{2, 6}));
  EXPECT_EQ(r.solver, PartyId{1});
  const auto& t = r.at(PartyId{1}).transformed->problem;
  EXPECT_EQ(t.m, DantzigProblem().m * r.q.Dense());
  EXPECT_EQ(t.b, DantzigProblem().b);
}

TEST(TwoPartyArbitraryTest, ViewsContainOnlyDeclaredMessages) {
  Rng rng(8);
  const auto shares = SplitShares(DantzigProblem(), 2, rng);
  const auto r = RunTwoPartyArbitrary(shares, SmallConfig(), 12);
  const std::multiset<std::string> p2_expected{kinds::kPk, kinds::kEncM1, kinds::kEncC1};
  EXPECT_EQ(ReceivedKinds(r.transcript, PartyId{2}, "transform/"), p2_expected);
  const std::set<std::string> p1_expected{steps::kDecryptMQ, steps::kDecryptCQ, steps::kDecryptB};
  EXPECT_EQ(DecryptedSteps(r.transcript, PartyId{1}, "transform/"), p1_expected);
  EXPECT_TRUE(DecryptedSteps(r.transcript, PartyId{2}, "transform/").empty());
  // P2 sees no entry of P1's private share.
  const auto forbidden = AnyEntryOf({shares[0].m, RationalMatrix::RowVector(shares[0].c)});
  EXPECT_TRUE(TranscriptAssert(r.transcript, PartyId{2}, forbidden).ok());
}

TEST(TwoPartyArbitraryTest, PeerAsSolverReceivesPublishedProblem) {
  Rng rng(9);
  const auto shares = SplitShares(DantzigProblem(), 2, rng);
  ProtocolConfig cfg = SmallConfig();
  cfg.solver_party = 2;
  const auto r = RunTwoPartyArbitrary(shares, cfg, 13);
  EXPECT_EQ(r.solver, PartyId{2});
  EXPECT_EQ(r.objective(), -36);
  EXPECT_EQ(r.solution(), (RationalVector{2, 6}));
  // Negative control: the published MQ does appear in P2's view.
  const auto forbidden = AnyEntryOf({r.at(PartyId{2}).transformed->problem.m});
  EXPECT_FALSE(TranscriptAssert(r.transcript, PartyId{2}, forbidden).ok());
}

TEST(TwoPartyArbitraryTest, RandomSplitsMatchCentralized) {
  Rng rng(303);
  for (int trial = 0; trial < 6; ++trial) {
    const LpProblem p = RandomFeasibleLp(rng, 3, 4, 9, 8, true);
    const LpSolution central = SimplexSolve(p);
    const auto r = RunTwoPartyArbitrary(SplitShares(p, 2, rng), SmallConfig(), 500 + trial);
    ASSERT_EQ(r.status(), central.status);
    if (central.status == LpStatus::kOptimal) {
      EXPECT_EQ(r.objective(), central.objective);
      EXPECT_EQ(Dot(p.c, r.solution()), central.objective);
      EXPECT_TRUE(VerifySolution(p, r.solution()).feasible);
    }
  }
}

TEST(TwoPartyArbitraryTest, RejectsWrongShareCount) {
  Rng rng(1);
  EXPECT_THROW(RunTwoPartyArbitrary(SplitShares(DantzigProblem(), 3, rng), SmallConfig(), 1),
               std::invalid_argument);
}

class MultiPartyTest : public ::testing::TestWithParam<std::size_t> {};

TEST_P(MultiPartyTest, DantzigAndTelescoping) {
  const std::size_t l = GetParam();
  Rng rng(40 + l);
  const auto shares = SplitShares(DantzigProblem(), l, rng);
  const auto r = RunMultiParty(shares, SmallConfig(), 77);
  ASSERT_EQ(r.status(), LpStatus::kOptimal);
  EXPECT_EQ(r.objective(), -36);
  EXPECT_EQ(r.solution(), (RationalVector{2, 6}));
  RationalMatrix sum_m = r.parties[0].published_m;
  RationalVector sum_b = r.parties[0].published_b;
  for (std::size_t k = 1; k < l; ++k) {
    sum_m = sum_m + r.parties[k].published_m;
    sum_b = sum_b + r.parties[k].published_b;
  }
  EXPECT_EQ(sum_m, DantzigProblem().m * r.q.Dense());
  EXPECT_EQ(sum_b, DantzigProblem().b);
  // Masks make individual published shares differ from M_i·Q.
  EXPECT_NE(r.parties[0].published_m, shares[0].m * r.q.Dense());
}

TEST_P(MultiPartyTest, ZeroMasksExposeIndividualProducts) {
  const std::size_t l = GetParam();
  Rng rng(50 + l);
  const auto shares = SplitShares(DantzigProblem(), l, rng);
  ProtocolConfig cfg = SmallConfig();
  cfg.zero_masks = true;
  const auto r = RunMultiParty(shares, cfg, 78);
  for (std::size_t k = 0; k < l; ++k) {
    EXPECT_EQ(r.parties[k].published_m, shares[k].m * r.q.Dense()) << k;
    EXPECT_EQ(r.parties[k].published_b, shares[k].b) << k;
  }
}

TEST_P(MultiPartyTest, SharesModeAndOtherSolver) {
  const std::size_t l = GetParam();
  Rng rng(60 + l);
  ProtocolConfig cfg = SmallConfig();
  cfg.mode = ReconstructMode::kShares;
  cfg.solver_party = l;
  const auto r = RunMultiParty(SplitShares(DantzigProblem(), l, rng), cfg, 79);
  EXPECT_EQ(r.solver, PartyId{l});
  EXPECT_EQ(r.solution(), (RationalVector{2, 6}));
  for (std::size_t k = 1; k <= l; ++k)
    EXPECT_EQ(r.transcript.FindLog(PartyId{k}, steps::kSolutionX), nullptr);
}

INSTANTIATE_TEST_SUITE_P(Parties, MultiPartyTest, ::testing::Values(3, 4));

TEST(MultiPartyErrorsTest, RequiresThreeParties) {
  Rng rng(1);
  try {
    RunMultiParty(SplitShares(DantzigProblem(), 2, rng), SmallConfig(), 1);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("requires at least 3 parties"), std::string::npos);
  }
}

TEST(MultiPartyErrorsTest, PreflightRejectsBadConfigurations) {
  Rng rng(2);
  const auto shares = SplitShares(DantzigProblem(), 3, rng);
  ProtocolConfig cfg = SmallConfig();
  cfg.key_bits = 64;
  EXPECT_THROW(RunMultiParty(shares, cfg, 1), std::invalid_argument);
  cfg = SmallConfig();
  cfg.key_bits = 128;
  cfg.coeff_max = mpz_class(1) << 40;
  EXPECT_THROW(RunMultiParty(shares, cfg, 1), OverflowError);
  cfg = SmallConfig();
  auto bad = shares;
  bad[1].m(0, 0) = mpq_class(1, 3);
  EXPECT_THROW(RunMultiParty(bad, cfg, 1), RepresentationError);
  bad = shares;
  bad[2].b.pop_back();
  EXPECT_THROW(RunMultiParty(bad, cfg, 1), DimensionError);
  bad = shares;
  bad[0].c[0] = mpq_class(1 << 21);
  EXPECT_THROW(RunMultiParty(bad, cfg, 1), OverflowError);
  cfg.solver_party = 4;
  EXPECT_THROW(RunMultiParty(shares, cfg, 1), std::invalid_argument);
}

TEST(MaskTest, NetMaskSumCancels) {
  Rng rng(3);
  const std::size_t l = 4;
  const mpz_class bound = ChainMaskBound(mpz_class(1) << 250, mpz_class(1) << 40, 65536, l, l);
  std::vector<std::vector<RationalMatrix>> masks(l, std::vector<RationalMatrix>(l));
  for (auto& row : masks)
    for (auto& m : row) {
      m = RationalMatrix(2, 3);
      for (auto& v : m.entries()) v = mpq_class(rng.Range(-bound, bound));
    }
  EXPECT_TRUE(NetMaskSum(masks).IsZero());
}

TEST(MaskTest, ChainMaskBoundArithmetic) {
  // H = 100, S0 = 10, C = 2, L = 2, l = 3: (100 - 40) / (2 * 3) = 10.
  EXPECT_EQ(ChainMaskBound(100, 10, 2, 2, 3), 10);
  EXPECT_THROW(ChainMaskBound(100, 30, 2, 2, 3), OverflowError);
}

TEST(DeterminismTest, SameSeedSameTranscript) {
  Rng rng(10);
  const auto shares = SplitShares(DantzigProblem(), 3, rng);
  const auto a = RunMultiParty(shares, SmallConfig(), 99);
  const auto b = RunMultiParty(shares, SmallConfig(), 99);
  const auto c = RunMultiParty(shares, SmallConfig(), 100);
  EXPECT_EQ(a.transcript, b.transcript);
  EXPECT_EQ(a.transcript.Digest(), b.transcript.Digest());
  EXPECT_EQ(a.q, b.q);
  EXPECT_NE(a.transcript.Digest(), c.transcript.Digest());
}

TEST(TransformOnlyTest, StopsBeforeSolving) {
  ProtocolConfig cfg = SmallConfig();
  cfg.transform_only = true;
  const auto r = RunObjectiveConstraintSplit(DantzigProblem(), cfg, 5);
  EXPECT_TRUE(r.at(PartyId{2}).transformed.has_value());
  EXPECT_FALSE(r.at(PartyId{2}).transformed_solution.has_value());
  for (const auto& m : r.transcript.messages()) EXPECT_EQ(m.kind.rfind("solve/", 0), std::string::npos);
}

}  // namespace
}  // namespace pplp
