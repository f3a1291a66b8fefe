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
#include <stdexcept>
#include <utility>

#include "pplp/error.h"
#include "pplp/wire.h"

namespace pplp {
namespace {

PartyId Party(std::size_t index) { return PartyId{index}; }

RationalMatrix Negated(const RationalMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.entries().size(); ++i) out.entries()[i] = -m.entries()[i];
  return out;
}

RationalMatrix LeftApply(const Monomial& q, const RationalMatrix& m) {
  if (m.rows() != q.dim()) throw DimensionError("left apply: dim Q != rows");
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t c = 0; c < m.cols(); ++c) out(i, c) = q.coeffs()[i] * m(q.perm()[i], c);
  return out;
}

// Uniform entries in [-bound, bound] / delta^e.
RationalMatrix RandomMask(std::size_t rows, std::size_t cols, const mpz_class& bound,
                          int e, const ScaleConfig& cfg, Rng& rng) {
  RationalMatrix mask(rows, cols);
  if (bound == 0) return mask;
  const mpz_class scale = cfg.DeltaPow(e);
  for (auto& v : mask.entries()) {
    v = mpq_class(rng.Range(-bound, bound), scale);
    v.canonicalize();
  }
  return mask;
}

mpz_class MinHalf(const KeyDirectory& keys) {
  if (keys.empty()) throw Error("no public keys available");
  mpz_class h = keys.begin()->second.half();
  for (const auto& [id, pk] : keys) h = std::min(h, pk.half());
  return h;
}

void RequireKey(const CipherMatrix& c, const PublicKey& pk, const char* what) {
  if (c.key_id() != pk.key_id) {
    throw KeyMismatchError(std::string(what) + " is not encrypted under the expected key");
  }
}

Monomial ChooseQ(const ProtocolConfig& cfg, std::size_t party, std::size_t n, Rng& rng) {
  if (party < cfg.fixed_q.size() && cfg.fixed_q[party]) {
    const Monomial& q = *cfg.fixed_q[party];
    if (q.dim() != n) throw DimensionError("fixed transformation has the wrong dimension");
    return q;
  }
  return GenerateMonomial(n, cfg.coeff_min, cfg.coeff_max, rng);
}

RationalMatrix StatusMatrix(LpStatus s) {
  RationalMatrix m(1, 1);
  m(0, 0) = static_cast<int>(s);
  return m;
}

LpStatus StatusFromMatrix(const RationalMatrix& m) {
  if (m.rows() != 1 || m.cols() != 1) throw SessionError("malformed status payload");
  const mpq_class& v = m(0, 0);
  if (v == 0) return LpStatus::kOptimal;
  if (v == 1) return LpStatus::kInfeasible;
  if (v == 2) return LpStatus::kUnbounded;
  throw SessionError("unknown status code");
}

void CheckData(const RationalMatrix& m, const ProtocolConfig& cfg, const char* what) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const mpq_class& v = m(r, c);
      if (abs(v) > cfg.scale.max_magnitude) {
        throw OverflowError(std::string(what) + " entry (" + std::to_string(r) + ", " +
                            std::to_string(c) + ") exceeds the public magnitude bound");
      }
      try {
        ScaleToInteger(v, cfg.data_exp, cfg.scale);
      } catch (const RepresentationError&) {
        throw RepresentationError(std::string(what) + " entry (" + std::to_string(r) + ", " +
                                  std::to_string(c) + ") = " + v.get_str() +
                                  " is not representable at the data scale");
      }
    }
  }
}

void CheckShare(const PartyShare& s, std::size_t rows, std::size_t cols,
                const ProtocolConfig& cfg) {
  if (s.m.rows() != rows || s.m.cols() != cols || s.c.size() != cols || s.b.size() != rows) {
    throw DimensionError("party shares disagree on problem dimensions");
  }
  CheckData(s.m, cfg, "M");
  CheckData(RationalMatrix::RowVector(s.c), cfg, "c");
  CheckData(RationalMatrix::ColumnVector(s.b), cfg, "b");
}

// Rejects configurations whose smallest possible modulus cannot hold the
// scaled data and a positive mask range, before any message is sent.
void Preflight(const ProtocolConfig& cfg, std::size_t dim, std::size_t parties,
               std::size_t chain) {
  if (cfg.key_bits < kMinKeyBits) {
    throw std::invalid_argument("key size " + std::to_string(cfg.key_bits) +
                                " is below the " + std::to_string(kMinKeyBits) + "-bit floor");
  }
  if (cfg.data_exp < 0 || cfg.data_exp > cfg.scale.max_exp) {
    throw OverflowError("data scale exponent outside [0, max_exp]");
  }
  if (cfg.coeff_min < 1 || cfg.coeff_max < cfg.coeff_min) {
    throw std::invalid_argument("coefficient range must satisfy 1 <= lo <= hi");
  }
  // Every generated modulus has exactly key_bits bits, so n >= 2^(key_bits-1).
  mpz_class n_min = 1;
  n_min <<= static_cast<unsigned long>(cfg.key_bits - 1);
  const PublicKey smallest = MakePublicKey(n_min + 1);
  CheckOverflowGuard(cfg.scale, smallest, dim, cfg.coeff_max);
  if (parties > 1 && !cfg.zero_masks) {
    ChainMaskBound(smallest.half(), cfg.scale.ScaledBound(cfg.data_exp), cfg.coeff_max, chain,
                   parties);
  }
}

struct ShareChain {
  std::string phase;
  std::string tag;
  bool right = true;  // share·Q, else Q·share
  std::vector<PartyId> order;
  std::vector<bool> active;  // index = party-1
  int scale_exp = 0;
  mpz_class initial_bound;
  mpz_class coeff_bound = 1;
};

struct ChainMember {
  const Monomial* q = nullptr;  // nullptr: the step only masks
  const KeyPair* keys = nullptr;
  const KeyDirectory* directory = nullptr;
  const ScaleConfig* cfg = nullptr;
  bool zero_masks = false;
};

// Additive-share chain: at the step of party A every other active party j
// sends Enc_j(share_j); A returns Enc_j(share_j ∘ Q_A − R_j) and keeps
// share_A ∘ Q_A + Σ_j R_j. The sum of all shares is transformed by Q_A and
// each R_j appears once with each sign.
Task<RationalMatrix> RunShareChain(PartyContext& ctx, ShareChain chain, RationalMatrix share,
                                   ChainMember me) {
  const std::size_t l = ctx.party_count();
  const ScaleConfig& cfg = *me.cfg;
  const mpz_class mask_bound =
      (me.zero_masks || l == 1)
          ? mpz_class(0)
          : ChainMaskBound(MinHalf(*me.directory), chain.initial_bound, chain.coeff_bound,
                           chain.order.size(), l);
  const std::string share_kind = chain.phase + "/enc.share." + chain.tag;
  const std::string masked_kind = chain.phase + "/enc.masked." + chain.tag;
  const std::string share_step = chain.phase + "/share." + chain.tag;

  auto apply_plain = [&](const RationalMatrix& s) {
    if (me.q == nullptr) return s;
    return chain.right ? RightApply(s, *me.q) : LeftApply(*me.q, s);
  };
  auto apply_cipher = [&](const PublicKey& pk, const CipherMatrix& c) {
    if (me.q == nullptr) return c;
    return chain.right ? RightApplyMonomial(pk, c, *me.q, 0, cfg)
                       : LeftApplyMonomial(pk, *me.q, c, 0, cfg);
  };

  const std::size_t self = ctx.id().index;
  for (const PartyId applier : chain.order) {
    if (applier == ctx.id()) {
      RationalMatrix next = chain.active[self - 1] ? apply_plain(share)
                                                   : RationalMatrix(share.rows(), share.cols());
      for (std::size_t j = 1; j <= l; ++j) {
        if (j == self || !chain.active[j - 1]) continue;
        const PublicKey& pk = me.directory->at(j);
        const CipherMatrix enc = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(j), share_kind));
        RequireKey(enc, pk, "chain share");
        const RationalMatrix mask =
            RandomMask(share.rows(), share.cols(), mask_bound, chain.scale_exp, cfg, ctx.rng());
        CipherMatrix out = AddPlainMatrix(pk, apply_cipher(pk, enc), Negated(mask), cfg, ctx.rng());
        ctx.Send(Party(j), masked_kind, EncodePayload(RerandomizeMatrix(pk, out, ctx.rng())));
        next = next + mask;
      }
      share = std::move(next);
    } else if (chain.active[self - 1]) {
      if (me.keys == nullptr) throw Error(ToString(ctx.id()) + " holds a share but has no key pair");
      const PublicKey& pk = me.keys->pub;
      ctx.Send(applier, share_kind,
               EncodePayload(EncryptMatrix(share, chain.scale_exp, pk, cfg, ctx.rng())));
      const CipherMatrix back = DecodeCipherMatrixPayload(co_await ctx.Receive(applier, masked_kind));
      share = DecryptMatrix(back, me.keys->priv, cfg);
      ctx.Log(share_step, LogCategory::kDecrypted, share.entries());
    }
    chain.active[applier.index - 1] = true;
  }
  co_return share;
}

struct ReconstructPlan {
  PartyId solver;
  std::vector<PartyId> product_order;  // x = Q_{order[0]} · Q_{order[1]} ⋯ y
  const Monomial* q = nullptr;
  const KeyPair* keys = nullptr;
  const KeyDirectory* directory = nullptr;
  const ProtocolConfig* cfg = nullptr;
  std::size_t n = 0;
};

// Solver side of the status exchange. Returns the transformed solution.
LpSolution SolveAndAnnounce(PartyContext& ctx, const LpProblem& transformed) {
  LpSolution sol = SimplexSolve(transformed);
  if (sol.status == LpStatus::kOptimal) {
    ctx.Log(steps::kSolutionY, LogCategory::kComputed, sol.x);
  }
  for (std::size_t j = 1; j <= ctx.party_count(); ++j) {
    if (j == ctx.id().index) continue;
    ctx.Send(Party(j), kinds::kStatus, EncodePayload(StatusMatrix(sol.status)));
  }
  return sol;
}

struct Scaled {
  mpz_class d;            // common denominator
  RationalVector v;       // d·y, integral
  unsigned long bits = 0;  // |v_i| < 2^bits
};

Scaled ScaleToIntegers(const RationalVector& y) {
  Scaled s;
  s.d = 1;
  for (const auto& v : y) mpz_lcm(s.d.get_mpz_t(), s.d.get_mpz_t(), v.get_den_mpz_t());
  s.v.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    s.v[i] = y[i] * mpq_class(s.d);
    const mpz_class mag = abs(s.v[i].get_num());
    s.bits = std::max<unsigned long>(s.bits, mag == 0 ? 0 : mpz_sizeinbase(mag.get_mpz_t(), 2));
  }
  return s;
}

// Broadcasts (or receives) the public denominator and magnitude bound.
Task<Scaled> ExchangeHeader(PartyContext& ctx, PartyId solver, const LpSolution* sol,
                            std::size_t n) {
  if (ctx.id() == solver) {
    Scaled s = ScaleToIntegers(sol->x);
    RationalMatrix header(1, 2);
    header(0, 0) = mpq_class(s.d);
    header(0, 1) = mpq_class(mpz_class(s.bits));
    for (std::size_t j = 1; j <= ctx.party_count(); ++j)
      if (j != solver.index) ctx.Send(Party(j), kinds::kReconstructHeader, EncodePayload(header));
    co_return s;
  }
  const RationalMatrix header =
      DecodeRationalMatrixPayload(co_await ctx.Receive(solver, kinds::kReconstructHeader));
  if (header.rows() != 1 || header.cols() != 2) throw SessionError("malformed header");
  Scaled s;
  s.d = header(0, 0).get_num();
  s.bits = header(0, 1).get_num().get_ui();
  s.v = RationalVector(n);
  co_return s;
}

// Opens additive shares to everyone when revealing.
Task<RationalVector> OpenShares(PartyContext& ctx, RationalVector mine) {
  for (std::size_t j = 1; j <= ctx.party_count(); ++j)
    if (j != ctx.id().index)
      ctx.Send(Party(j), kinds::kReconstructOpen, EncodePayload(RationalMatrix::ColumnVector(mine)));
  RationalVector x = mine;
  for (std::size_t j = 1; j <= ctx.party_count(); ++j) {
    if (j == ctx.id().index) continue;
    const RationalMatrix other =
        DecodeRationalMatrixPayload(co_await ctx.Receive(Party(j), kinds::kReconstructOpen));
    x = x + other.entries();
  }
  ctx.Log(steps::kSolutionX, LogCategory::kComputed, x);
  co_return x;
}

// Status exchange, then x = Q_{order[0]}⋯Q_{order[k]}·y via the share chain.
Task<void> SolveAndReconstruct(PartyContext& ctx, ReconstructPlan plan,
                               std::optional<LpProblem> transformed, PartyOutcome* out) {
  LpSolution sol;
  if (ctx.id() == plan.solver) {
    sol = SolveAndAnnounce(ctx, *transformed);
    out->transformed_solution = sol;
    out->status = sol.status;
  } else {
    out->status = StatusFromMatrix(
        DecodeRationalMatrixPayload(co_await ctx.Receive(plan.solver, kinds::kStatus)));
  }
  if (out->status != LpStatus::kOptimal) co_return;

  const Scaled header = co_await ExchangeHeader(ctx, plan.solver, &sol, plan.n);
  RationalMatrix share(plan.n, 1);
  if (ctx.id() == plan.solver) share = RationalMatrix::ColumnVector(header.v);

  ShareChain chain;
  chain.phase = "reconstruct";
  chain.tag = "x";
  chain.right = false;
  chain.order.assign(plan.product_order.rbegin(), plan.product_order.rend());
  chain.active.assign(ctx.party_count(), false);
  chain.active[plan.solver.index - 1] = true;
  chain.scale_exp = 0;
  chain.initial_bound = mpz_class(1) << header.bits;
  chain.coeff_bound = plan.cfg->coeff_max;
  ChainMember me{plan.q, plan.keys, plan.directory, &plan.cfg->scale, plan.cfg->zero_masks};
  share = co_await RunShareChain(ctx, chain, std::move(share), me);

  RationalVector mine = share.entries();
  for (auto& v : mine) v /= mpq_class(header.d);
  if (plan.cfg->mode == ReconstructMode::kShares) {
    ctx.Log(steps::kShareX, LogCategory::kComputed, mine);
    out->x = std::move(mine);
  } else {
    out->x = co_await OpenShares(ctx, std::move(mine));
  }
}

// ---------------------------------------------------------------------------
// Secure scalar product.

Task<void> ScalarProductP1(PartyContext& ctx, std::vector<mpz_class> x, int key_bits,
                           mpz_class* r_a) {
  const KeyPair kp = GenerateKeyPair(key_bits, ctx.rng());
  ctx.Send(Party(2), kinds::kPk, EncodePayload(kp.pub));
  RationalMatrix column(x.size(), 1);
  for (std::size_t i = 0; i < x.size(); ++i) column(i, 0) = mpq_class(x[i]);
  const ScaleConfig cfg;
  ctx.Send(Party(2), kinds::kScalarInputs,
           EncodePayload(EncryptMatrix(column, 0, kp.pub, cfg, ctx.rng())));
  const CipherMatrix w = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(2), kinds::kScalarResult));
  *r_a = SignedValue(Decrypt(kp.priv, w.Cell(0, 0)), kp.pub);
  ctx.Log(steps::kScalarShare, LogCategory::kDecrypted, {mpq_class(*r_a)});
}

Task<void> ScalarProductP2(PartyContext& ctx, std::vector<mpz_class> y, mpz_class entry_bound,
                           mpz_class* r_b) {
  const PublicKey pk = DecodePublicKeyPayload(co_await ctx.Receive(Party(1), kinds::kPk));
  const CipherMatrix c = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(1), kinds::kScalarInputs));
  RequireKey(c, pk, "scalar product inputs");
  if (c.rows() != y.size() || c.cols() != 1) throw DimensionError("scalar product: length mismatch");
  const mpz_class product_bound =
      mpz_class(static_cast<unsigned long>(y.size())) * entry_bound * entry_bound;
  if (product_bound >= pk.half()) throw OverflowError("scalar product exceeds the plaintext window");
  const mpz_class mask_bound = pk.half() - product_bound;
  RationalVector yq(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) yq[i] = mpq_class(y[i]);
  const ScaleConfig cfg;
  const CipherMatrix w = VectorTimesCipher(pk, yq, 0, c, cfg);
  *r_b = ctx.rng().Range(-mask_bound, mask_bound);
  const Ciphertext masked =
      AddCipher(pk, w.Cell(0, 0), Encrypt(pk, SignedResidue(-*r_b, pk), ctx.rng()));
  ctx.Send(Party(1), kinds::kScalarResult,
           EncodePayload(CipherMatrix(1, 1, 0, pk.key_id, {masked.value})));
}

// ---------------------------------------------------------------------------
// Objective holder (P1) / constraint holder (P2).

Task<void> SplitObjectiveHolder(PartyContext& ctx, RationalVector c, ProtocolConfig cfg,
                                PartyOutcome* out) {
  const auto perm = DecodePermutationPayload(co_await ctx.Receive(Party(2), kinds::kSetupPerm));
  if (perm.size() != c.size()) throw DimensionError("shared permutation has the wrong length");
  Monomial q1 = (!cfg.fixed_q.empty() && cfg.fixed_q[0])
                    ? *cfg.fixed_q[0]
                    : GenerateMonomialWithPerm(perm, cfg.coeff_min, cfg.coeff_max, ctx.rng());
  if (q1.perm() != perm) throw std::invalid_argument("Q1 does not use the shared permutation");
  out->q = q1;

  const PublicKey pk = DecodePublicKeyPayload(co_await ctx.Receive(Party(2), kinds::kPk));
  const CipherMatrix mq2 = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(2), kinds::kEncMQ2));
  const CipherMatrix q2 = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(2), kinds::kEncQ2));
  const CipherMatrix m = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(2), kinds::kEncM));
  RequireKey(mq2, pk, "(MQ2)'");
  RequireKey(q2, pk, "Q2'");
  RequireKey(m, pk, "M'");

  // S' = M'^Q1 * (MQ2)'
  const CipherMatrix s = AddCipherMatrix(pk, RightApplyMonomial(pk, m, q1, 0, cfg.scale), mq2);
  ctx.Send(Party(2), kinds::kEncS, EncodePayload(RerandomizeMatrix(pk, s, ctx.rng())));
  // V' = Q2'^c * (cᵀQ1)'
  const CipherMatrix cq1 = EncryptMatrix(RationalMatrix::RowVector(RightApply(c, q1)),
                                         cfg.data_exp, pk, cfg.scale, ctx.rng());
  const CipherMatrix v =
      AddCipherMatrix(pk, VectorTimesCipher(pk, c, cfg.data_exp, q2, cfg.scale), cq1);
  ctx.Send(Party(2), kinds::kEncV, EncodePayload(RerandomizeMatrix(pk, v, ctx.rng())));
  if (cfg.transform_only) co_return;

  out->status = StatusFromMatrix(
      DecodeRationalMatrixPayload(co_await ctx.Receive(Party(2), kinds::kStatus)));
  if (out->status != LpStatus::kOptimal) co_return;

  // x = Q1·y + Q2·y: P1 turns Enc(d·y) into Enc(Q1·d·y − R) and keeps R.
  const Scaled header = co_await ExchangeHeader(ctx, Party(2), nullptr, c.size());
  const CipherMatrix ency = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(2), kinds::kReconstructEncY));
  RequireKey(ency, pk, "Enc(y)");
  const mpz_class mask_bound =
      cfg.zero_masks ? mpz_class(0)
                     : ChainMaskBound(pk.half(), mpz_class(1) << header.bits, cfg.coeff_max, 1, 2);
  const RationalMatrix mask = RandomMask(c.size(), 1, mask_bound, 0, cfg.scale, ctx.rng());
  const CipherMatrix masked =
      AddPlainMatrix(pk, LeftApplyMonomial(pk, q1, ency, 0, cfg.scale), Negated(mask), cfg.scale,
                     ctx.rng());
  ctx.Send(Party(2), kinds::kReconstructMasked, EncodePayload(RerandomizeMatrix(pk, masked, ctx.rng())));
  RationalVector mine = mask.entries();
  for (auto& x : mine) x /= mpq_class(header.d);
  if (cfg.mode == ReconstructMode::kShares) {
    ctx.Log(steps::kShareX, LogCategory::kComputed, mine);
    out->x = std::move(mine);
  } else {
    out->x = co_await OpenShares(ctx, std::move(mine));
  }
}

Task<void> SplitConstraintHolder(PartyContext& ctx, RationalMatrix m, RationalVector b,
                                 bool negated, ProtocolConfig cfg, PartyOutcome* out) {
  const std::size_t n = m.cols();
  const KeyPair kp = GenerateKeyPair(cfg.key_bits, ctx.rng());
  // Q1 + Q2 has coefficients up to 2·coeff_max.
  CheckOverflowGuard(cfg.scale, kp.pub, n, 2 * cfg.coeff_max);

  const bool fixed = cfg.fixed_q.size() > 1 && cfg.fixed_q[1];
  const std::vector<std::size_t> perm = fixed ? cfg.fixed_q[1]->perm() : RandomPermutation(n, ctx.rng());
  ctx.Send(Party(1), kinds::kSetupPerm, EncodePermutationPayload(perm));
  const Monomial q2 =
      fixed ? *cfg.fixed_q[1] : GenerateMonomialWithPerm(perm, cfg.coeff_min, cfg.coeff_max, ctx.rng());
  out->q = q2;

  ctx.Send(Party(1), kinds::kPk, EncodePayload(kp.pub));
  ctx.Send(Party(1), kinds::kEncMQ2,
           EncodePayload(EncryptMatrix(RightApply(m, q2), cfg.data_exp, kp.pub, cfg.scale, ctx.rng())));
  ctx.Send(Party(1), kinds::kEncQ2,
           EncodePayload(EncryptMatrix(q2.Dense(), 0, kp.pub, cfg.scale, ctx.rng())));
  ctx.Send(Party(1), kinds::kEncM,
           EncodePayload(EncryptMatrix(m, cfg.data_exp, kp.pub, cfg.scale, ctx.rng())));

  const CipherMatrix s = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(1), kinds::kEncS));
  const CipherMatrix v = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(1), kinds::kEncV));
  const RationalMatrix mq = DecryptMatrix(s, kp.priv, cfg.scale);
  const RationalMatrix cq = DecryptMatrix(v, kp.priv, cfg.scale);
  ctx.Log(steps::kDecryptMQ, LogCategory::kDecrypted, mq.entries());
  ctx.Log(steps::kDecryptCQ, LogCategory::kDecrypted, cq.entries());

  TransformedProblem t{LpProblem{cq.entries(), mq, b, negated}, ctx.id()};
  out->transformed = t;
  if (cfg.transform_only) co_return;

  const LpSolution sol = SolveAndAnnounce(ctx, t.problem);
  out->transformed_solution = sol;
  out->status = sol.status;
  if (sol.status != LpStatus::kOptimal) co_return;

  const Scaled header = co_await ExchangeHeader(ctx, ctx.id(), &sol, n);
  ctx.Send(Party(1), kinds::kReconstructEncY,
           EncodePayload(EncryptMatrix(RationalMatrix::ColumnVector(header.v), 0, kp.pub, cfg.scale,
                                       ctx.rng())));
  const CipherMatrix masked =
      DecodeCipherMatrixPayload(co_await ctx.Receive(Party(1), kinds::kReconstructMasked));
  const RationalMatrix q1_part = DecryptMatrix(masked, kp.priv, cfg.scale);
  ctx.Log(steps::kShareX, LogCategory::kDecrypted, q1_part.entries());
  RationalVector mine = Apply(q2, header.v) + q1_part.entries();
  for (auto& x : mine) x /= mpq_class(header.d);
  if (cfg.mode == ReconstructMode::kShares) {
    out->x = std::move(mine);
  } else {
    out->x = co_await OpenShares(ctx, std::move(mine));
  }
}

// ---------------------------------------------------------------------------
// Two parties, arbitrary partition.

Task<void> ArbitraryKeyHolder(PartyContext& ctx, PartyShare share, bool negated, PartyId solver,
                              ProtocolConfig cfg, PartyOutcome* out) {
  const std::size_t n = share.c.size();
  const KeyPair kp = GenerateKeyPair(cfg.key_bits, ctx.rng());
  CheckOverflowGuard(cfg.scale, kp.pub, n, cfg.coeff_max);
  const Monomial q1 = ChooseQ(cfg, 0, n, ctx.rng());
  out->q = q1;

  ctx.Send(Party(2), kinds::kPk, EncodePayload(kp.pub));
  ctx.Send(Party(2), kinds::kEncM1,
           EncodePayload(EncryptMatrix(share.m, cfg.data_exp, kp.pub, cfg.scale, ctx.rng())));
  ctx.Send(Party(2), kinds::kEncC1,
           EncodePayload(EncryptMatrix(RationalMatrix::RowVector(share.c), cfg.data_exp, kp.pub,
                                       cfg.scale, ctx.rng())));

  const CipherMatrix mq2 = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(2), kinds::kEncMQ2));
  const CipherMatrix cq2 = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(2), kinds::kEncCQ2));
  const CipherMatrix b2 = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(2), kinds::kEncB2));
  RequireKey(mq2, kp.pub, "(MQ2)'");
  RequireKey(cq2, kp.pub, "(cQ2)'");
  RequireKey(b2, kp.pub, "Enc(b2)");

  const RationalMatrix mq =
      DecryptMatrix(RightApplyMonomial(kp.pub, mq2, q1, 0, cfg.scale), kp.priv, cfg.scale);
  const RationalMatrix cq =
      DecryptMatrix(RightApplyMonomial(kp.pub, cq2, q1, 0, cfg.scale), kp.priv, cfg.scale);
  const RationalMatrix b =
      DecryptMatrix(AddPlainMatrix(kp.pub, b2, RationalMatrix::ColumnVector(share.b), cfg.scale,
                                   ctx.rng()),
                    kp.priv, cfg.scale);
  ctx.Log(steps::kDecryptMQ, LogCategory::kDecrypted, mq.entries());
  ctx.Log(steps::kDecryptCQ, LogCategory::kDecrypted, cq.entries());
  ctx.Log(steps::kDecryptB, LogCategory::kDecrypted, b.entries());

  std::optional<LpProblem> transformed;
  if (solver == ctx.id()) {
    transformed = LpProblem{cq.entries(), mq, b.entries(), negated};
    out->transformed = TransformedProblem{*transformed, solver};
  } else {
    ctx.Send(solver, kinds::kPublishM, EncodePayload(mq));
    ctx.Send(solver, kinds::kPublishC, EncodePayload(cq));
    ctx.Send(solver, kinds::kPublishB, EncodePayload(b));
  }
  if (cfg.transform_only) co_return;

  KeyDirectory directory{{1, kp.pub}};
  if (solver != ctx.id()) {
    directory[solver.index] =
        DecodePublicKeyPayload(co_await ctx.Receive(solver, kinds::kReconstructPk));
  }
  const KeyPair* keys = &kp;
  ReconstructPlan plan{solver, {Party(2), Party(1)}, &q1, keys, &directory, &cfg, n};
  co_await SolveAndReconstruct(ctx, plan, transformed, out);
}

Task<void> ArbitraryPeer(PartyContext& ctx, PartyShare share, bool negated, PartyId solver,
                         ProtocolConfig cfg, PartyOutcome* out) {
  const std::size_t n = share.c.size();
  const PublicKey pk = DecodePublicKeyPayload(co_await ctx.Receive(Party(1), kinds::kPk));
  const CipherMatrix m1 = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(1), kinds::kEncM1));
  const CipherMatrix c1 = DecodeCipherMatrixPayload(co_await ctx.Receive(Party(1), kinds::kEncC1));
  RequireKey(m1, pk, "M1'");
  RequireKey(c1, pk, "c1'");
  const Monomial q2 = ChooseQ(cfg, 1, n, ctx.rng());
  out->q = q2;

  // M' = M1' * M2', C' = C1' * C2'
  const CipherMatrix m = AddPlainMatrix(pk, m1, share.m, cfg.scale, ctx.rng());
  const CipherMatrix c = AddPlainMatrix(pk, c1, RationalMatrix::RowVector(share.c), cfg.scale, ctx.rng());
  ctx.Send(Party(1), kinds::kEncMQ2,
           EncodePayload(HomomorphicRightMul(pk, m, q2, nullptr, cfg.scale, ctx.rng())));
  ctx.Send(Party(1), kinds::kEncCQ2,
           EncodePayload(HomomorphicRightMul(pk, c, q2, nullptr, cfg.scale, ctx.rng())));
  ctx.Send(Party(1), kinds::kEncB2,
           EncodePayload(EncryptMatrix(RationalMatrix::ColumnVector(share.b), cfg.data_exp, pk,
                                       cfg.scale, ctx.rng())));

  std::optional<LpProblem> transformed;
  if (solver == ctx.id()) {
    const RationalMatrix mq = DecodeRationalMatrixPayload(co_await ctx.Receive(Party(1), kinds::kPublishM));
    const RationalMatrix cq = DecodeRationalMatrixPayload(co_await ctx.Receive(Party(1), kinds::kPublishC));
    const RationalMatrix b = DecodeRationalMatrixPayload(co_await ctx.Receive(Party(1), kinds::kPublishB));
    transformed = LpProblem{cq.entries(), mq, b.entries(), negated};
    out->transformed = TransformedProblem{*transformed, solver};
  }
  if (cfg.transform_only) co_return;

  KeyDirectory directory{{1, pk}};
  std::optional<KeyPair> own;
  if (solver == ctx.id()) {
    // The solver's share must travel encrypted to P1, so it needs a key.
    own = GenerateKeyPair(cfg.key_bits, ctx.rng());
    directory[ctx.id().index] = own->pub;
    ctx.Send(Party(1), kinds::kReconstructPk, EncodePayload(own->pub));
  }
  ReconstructPlan plan{solver, {Party(2), Party(1)}, &q2, own ? &*own : nullptr, &directory, &cfg, n};
  co_await SolveAndReconstruct(ctx, plan, transformed, out);
}

// ---------------------------------------------------------------------------
// l >= 3 parties.

Task<void> MultiPartyMember(PartyContext& ctx, PartyShare share, bool negated, PartyId solver,
                            ProtocolConfig cfg, PartyOutcome* out) {
  const std::size_t l = ctx.party_count();
  const std::size_t n = share.c.size();
  const std::size_t rows = share.b.size();
  const KeyPair kp = GenerateKeyPair(cfg.key_bits, ctx.rng());
  CheckOverflowGuard(cfg.scale, kp.pub, n, cfg.coeff_max);
  for (std::size_t j = 1; j <= l; ++j)
    if (j != ctx.id().index) ctx.Send(Party(j), kinds::kPk, EncodePayload(kp.pub));
  KeyDirectory directory{{ctx.id().index, kp.pub}};
  for (std::size_t j = 1; j <= l; ++j)
    if (j != ctx.id().index)
      directory[j] = DecodePublicKeyPayload(co_await ctx.Receive(Party(j), kinds::kPk));

  const Monomial q = ChooseQ(cfg, ctx.id().index - 1, n, ctx.rng());
  out->q = q;

  std::vector<PartyId> order;
  for (std::size_t j = 1; j <= l; ++j) order.push_back(Party(j));
  ShareChain chain;
  chain.phase = "transform";
  chain.order = order;
  chain.active.assign(l, true);
  chain.scale_exp = cfg.data_exp;
  chain.initial_bound = cfg.scale.ScaledBound(cfg.data_exp);
  ChainMember me{&q, &kp, &directory, &cfg.scale, cfg.zero_masks};

  chain.tag = "M";
  chain.coeff_bound = cfg.coeff_max;
  const RationalMatrix mq = co_await RunShareChain(ctx, chain, share.m, me);
  chain.tag = "c";
  const RationalMatrix cq = co_await RunShareChain(ctx, chain, RationalMatrix::RowVector(share.c), me);
  // b is only masked; it is not transformed.
  chain.tag = "b";
  chain.coeff_bound = 1;
  ChainMember mask_only = me;
  mask_only.q = nullptr;
  const RationalMatrix b =
      co_await RunShareChain(ctx, chain, RationalMatrix::ColumnVector(share.b), mask_only);

  out->published_m = mq;
  out->published_c = cq.entries();
  out->published_b = b.entries();

  std::optional<LpProblem> transformed;
  if (ctx.id() != solver) {
    ctx.Send(solver, kinds::kPublishM, EncodePayload(mq));
    ctx.Send(solver, kinds::kPublishC, EncodePayload(cq));
    ctx.Send(solver, kinds::kPublishB, EncodePayload(b));
  } else {
    RationalMatrix sum_m = mq;
    RationalVector sum_c = cq.entries();
    RationalVector sum_b = b.entries();
    for (std::size_t j = 1; j <= l; ++j) {
      if (j == ctx.id().index) continue;
      sum_m = sum_m + DecodeRationalMatrixPayload(co_await ctx.Receive(Party(j), kinds::kPublishM));
      sum_c = sum_c + DecodeRationalMatrixPayload(co_await ctx.Receive(Party(j), kinds::kPublishC)).entries();
      sum_b = sum_b + DecodeRationalMatrixPayload(co_await ctx.Receive(Party(j), kinds::kPublishB)).entries();
    }
    ctx.Log(steps::kSumMQ, LogCategory::kComputed, sum_m.entries());
    ctx.Log(steps::kSumCQ, LogCategory::kComputed, sum_c);
    ctx.Log(steps::kSumB, LogCategory::kComputed, sum_b);
    transformed = LpProblem{sum_c, sum_m, sum_b, negated};
    out->transformed = TransformedProblem{*transformed, solver};
  }
  if (cfg.transform_only) co_return;
  (void)rows;

  ReconstructPlan plan{solver, order, &q, &kp, &directory, &cfg, n};
  co_await SolveAndReconstruct(ctx, plan, transformed, out);
}

void ValidateShares(const std::vector<PartyShare>& shares, const ProtocolConfig& cfg) {
  if (shares.empty()) throw DimensionError("no party shares");
  const std::size_t rows = shares.front().b.size();
  const std::size_t cols = shares.front().c.size();
  if (cols == 0) throw DimensionError("LP needs at least one variable");
  for (const auto& s : shares) CheckShare(s, rows, cols, cfg);
}

PartyId ResolveSolver(const ProtocolConfig& cfg, std::size_t parties, std::size_t fallback) {
  const std::size_t s = cfg.solver_party == 0 ? fallback : cfg.solver_party;
  if (s < 1 || s > parties) {
    throw std::invalid_argument("solver party " + std::to_string(s) + " is not a participant");
  }
  return Party(s);
}

}  // namespace

mpz_class ChainMaskBound(const mpz_class& half, const mpz_class& initial, const mpz_class& coeff,
                         std::size_t steps, std::size_t parties) {
  // After t steps every share is bounded by S_t = C·S_{t-1} + (l-1)·B, so
  // S_steps = C^steps·S_0 + (l-1)·B·(1 + C + … + C^(steps-1)).
  mpz_class c_pow = 1;
  mpz_class geometric = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    geometric += c_pow;
    c_pow *= coeff;
  }
  const mpz_class headroom = half - c_pow * initial;
  const mpz_class per_mask = mpz_class(static_cast<unsigned long>(parties > 1 ? parties - 1 : 1)) *
                             (geometric == 0 ? mpz_class(1) : geometric);
  mpz_class bound = headroom > 0 ? mpz_class(headroom / per_mask) : mpz_class(0);
  if (bound < 1) {
    throw OverflowError("key too small: no room for masks over a chain of " +
                        std::to_string(steps) + " steps");
  }
  return bound;
}

std::vector<PartyShare> SharesFromPartition(const std::vector<LpProblem>& canonical) {
  std::vector<PartyShare> shares;
  for (const auto& p : canonical) shares.push_back(PartyShare{p.m, p.c, p.b});
  return shares;
}

LpProblem SumShares(const std::vector<PartyShare>& shares, bool negated_objective) {
  if (shares.empty()) throw DimensionError("no party shares");
  LpProblem p{shares.front().c, shares.front().m, shares.front().b, negated_objective};
  for (std::size_t k = 1; k < shares.size(); ++k) {
    p.c = p.c + shares[k].c;
    p.m = p.m + shares[k].m;
    p.b = p.b + shares[k].b;
  }
  return p;
}

mpq_class PipelineResult::objective() const {
  const PartyOutcome& s = at(solver);
  if (!s.transformed_solution || s.transformed_solution->status != LpStatus::kOptimal) {
    throw Error("no optimal solution");
  }
  return ReportedObjective(s.transformed->problem, *s.transformed_solution);
}

RationalVector PipelineResult::solution() const {
  const PartyOutcome& s = at(solver);
  if (s.status != LpStatus::kOptimal) throw Error("no optimal solution");
  if (!s.x.empty() && transcript.FindLog(solver, steps::kSolutionX) != nullptr) return s.x;
  RationalVector x = ZeroVector(s.x.size());
  for (const auto& p : parties) x = x + p.x;
  return x;
}

ScalarProductResult SecureScalarProduct(const std::vector<mpz_class>& x,
                                        const std::vector<mpz_class>& y,
                                        const ScalarProductOptions& options, std::uint64_t seed) {
  if (x.size() != y.size()) throw DimensionError("scalar product: length mismatch");
  if (x.empty()) throw DimensionError("scalar product: empty vectors");
  for (const auto* v : {&x, &y})
    for (const auto& e : *v)
      if (abs(e) > options.entry_bound) throw OverflowError("scalar product entry exceeds the bound");
  ScalarProductResult result;
  std::vector<PartyProgram> programs{
      [&](PartyContext& ctx) { return ScalarProductP1(ctx, x, options.key_bits, &result.r_a); },
      [&](PartyContext& ctx) {
        return ScalarProductP2(ctx, y, options.entry_bound, &result.r_b);
      }};
  result.transcript = RunSession(programs, seed);
  return result;
}

CipherMatrix HomomorphicRightMul(const PublicKey& pk, const CipherMatrix& c, const Monomial& q,
                                 const RationalMatrix* mask, const ScaleConfig& cfg, Rng& rng) {
  if (!q.IsIntegral()) throw std::invalid_argument("homomorphic right-multiplication needs integer coefficients");
  CipherMatrix out = RightApplyMonomial(pk, c, q, 0, cfg);
  if (mask != nullptr) out = AddPlainMatrix(pk, out, *mask, cfg, rng);
  return RerandomizeMatrix(pk, out, rng);
}

PipelineResult RunObjectiveConstraintSplit(const LpProblem& problem, const ProtocolConfig& cfg,
                                           std::uint64_t seed) {
  problem.Validate();
  if (cfg.solver_party != 0 && cfg.solver_party != 2) {
    throw std::invalid_argument("the objective/constraint split delivers the problem to P2");
  }
  CheckData(problem.m, cfg, "M");
  CheckData(RationalMatrix::RowVector(problem.c), cfg, "c");
  Preflight(cfg, problem.num_vars(), 2, 1);

  PipelineResult result;
  result.parties.resize(2);
  result.solver = Party(2);
  result.transform_only = cfg.transform_only;
  std::vector<PartyProgram> programs{
      [&](PartyContext& ctx) {
        return SplitObjectiveHolder(ctx, problem.c, cfg, &result.parties[0]);
      },
      [&](PartyContext& ctx) {
        return SplitConstraintHolder(ctx, problem.m, problem.b, problem.negated_objective, cfg,
                                     &result.parties[1]);
      }};
  result.transcript = RunSession(programs, seed);
  result.q = AddSamePerm(*result.parties[0].q, *result.parties[1].q);
  return result;
}

PipelineResult RunTwoPartyArbitrary(const std::vector<PartyShare>& shares,
                                    const ProtocolConfig& cfg, std::uint64_t seed,
                                    bool negated_objective) {
  if (shares.size() != 2) throw std::invalid_argument("the two-party protocol needs exactly 2 shares");
  ValidateShares(shares, cfg);
  Preflight(cfg, shares.front().c.size(), 2, 2);
  const PartyId solver = ResolveSolver(cfg, 2, 1);

  PipelineResult result;
  result.parties.resize(2);
  result.solver = solver;
  result.transform_only = cfg.transform_only;
  std::vector<PartyProgram> programs{
      [&](PartyContext& ctx) {
        return ArbitraryKeyHolder(ctx, shares[0], negated_objective, solver, cfg, &result.parties[0]);
      },
      [&](PartyContext& ctx) {
        return ArbitraryPeer(ctx, shares[1], negated_objective, solver, cfg, &result.parties[1]);
      }};
  result.transcript = RunSession(programs, seed);
  result.q = Compose(*result.parties[1].q, *result.parties[0].q);
  return result;
}

PipelineResult RunMultiParty(const std::vector<PartyShare>& shares, const ProtocolConfig& cfg,
                             std::uint64_t seed, bool negated_objective) {
  if (shares.size() < 3) {
    throw std::invalid_argument("multi-party transformation requires at least 3 parties");
  }
  ValidateShares(shares, cfg);
  Preflight(cfg, shares.front().c.size(), shares.size(), shares.size());
  const PartyId solver = ResolveSolver(cfg, shares.size(), 1);

  PipelineResult result;
  result.parties.resize(shares.size());
  result.solver = solver;
  result.transform_only = cfg.transform_only;
  std::vector<PartyProgram> programs;
  for (std::size_t k = 0; k < shares.size(); ++k) {
    programs.push_back([&, k](PartyContext& ctx) {
      return MultiPartyMember(ctx, shares[k], negated_objective, solver, cfg, &result.parties[k]);
    });
  }
  result.transcript = RunSession(programs, seed);
  result.q = *result.parties[0].q;
  for (std::size_t k = 1; k < shares.size(); ++k) result.q = Compose(result.q, *result.parties[k].q);
  return result;
}

RationalMatrix NetMaskSum(const std::vector<std::vector<RationalMatrix>>& masks) {
  if (masks.empty()) throw DimensionError("no masks");
  const std::size_t l = masks.size();
  std::optional<RationalMatrix> total;
  for (std::size_t i = 0; i < l; ++i) {
    if (masks[i].size() != l) throw DimensionError("mask table must be l x l");
    for (std::size_t j = 0; j < l; ++j) {
      if (i == j) continue;
      const RationalMatrix term = masks[i][j] - masks[j][i];
      total = total ? *total + term : term;
    }
  }
  return total ? *total : RationalMatrix();
}

}  // namespace pplp
