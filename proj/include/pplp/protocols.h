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

#ifndef PPLP_PROTOCOLS_H_
#define PPLP_PROTOCOLS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pplp/crypto.h"
#include "pplp/encoding.h"
#include "pplp/linalg.h"
#include "pplp/runtime.h"
#include "pplp/solver.h"

namespace pplp {

// Message kinds. The prefix names the phase: setup/, transform/, solve/,
// reconstruct/.
namespace kinds {
inline constexpr char kSetupPerm[] = "setup/perm";
inline constexpr char kPk[] = "transform/pk";
// Secure scalar product.
inline constexpr char kScalarInputs[] = "transform/enc.x";
inline constexpr char kScalarResult[] = "transform/enc.w";
// Objective/constraint split.
inline constexpr char kEncMQ2[] = "transform/enc.MQ2";
inline constexpr char kEncQ2[] = "transform/enc.Q2";
inline constexpr char kEncM[] = "transform/enc.M";
inline constexpr char kEncS[] = "transform/enc.S";
inline constexpr char kEncV[] = "transform/enc.V";
// Two-party arbitrary partition.
inline constexpr char kEncM1[] = "transform/enc.M1";
inline constexpr char kEncC1[] = "transform/enc.c1";
inline constexpr char kEncCQ2[] = "transform/enc.cQ2";
inline constexpr char kEncB2[] = "transform/enc.b2";
// Published plaintext transformed problem / shares.
inline constexpr char kPublishM[] = "transform/publish.M";
inline constexpr char kPublishC[] = "transform/publish.c";
inline constexpr char kPublishB[] = "transform/publish.b";
inline constexpr char kStatus[] = "solve/status";
inline constexpr char kReconstructPk[] = "reconstruct/pk";
inline constexpr char kReconstructHeader[] = "reconstruct/header";
inline constexpr char kReconstructEncY[] = "reconstruct/enc.y";
inline constexpr char kReconstructMasked[] = "reconstruct/enc.masked";
inline constexpr char kReconstructOpen[] = "reconstruct/open";
}  // namespace kinds

// Log step tags.
namespace steps {
inline constexpr char kDecryptMQ[] = "transform/decrypt.MQ";
inline constexpr char kDecryptCQ[] = "transform/decrypt.cQ";
inline constexpr char kDecryptB[] = "transform/decrypt.b";
inline constexpr char kScalarShare[] = "transform/decrypt.rA";
inline constexpr char kSumMQ[] = "transform/sum.MQ";
inline constexpr char kSumCQ[] = "transform/sum.cQ";
inline constexpr char kSumB[] = "transform/sum.b";
inline constexpr char kSolutionY[] = "solve/y";
inline constexpr char kSolutionX[] = "reconstruct/x";
inline constexpr char kShareX[] = "reconstruct/share";
}  // namespace steps

enum class ReconstructMode { kReveal, kShares };

struct ProtocolConfig {
  int key_bits = kDefaultKeyBits;
  ScaleConfig scale;
  int data_exp = 1;  // scale exponent at which c, M and b are encoded
  mpz_class coeff_min = 1;
  mpz_class coeff_max = 65536;
  // 0 picks the variant default.
  std::size_t solver_party = 0;
  ReconstructMode mode = ReconstructMode::kReveal;
  // Stop after the transformed problem is assembled.
  bool transform_only = false;
  // Test hooks: all masks zero; fixed transformation shares (index = party-1).
  bool zero_masks = false;
  std::vector<std::optional<Monomial>> fixed_q;
};

using KeyDirectory = std::map<std::size_t, PublicKey>;

// An additive share of the LP held by one party.
struct PartyShare {
  RationalMatrix m;
  RationalVector c;
  RationalVector b;
};

std::vector<PartyShare> SharesFromPartition(const std::vector<LpProblem>& canonical);
LpProblem SumShares(const std::vector<PartyShare>& shares, bool negated_objective = false);

struct TransformedProblem {
  LpProblem problem;  // (MQ, cᵀQ, b)
  PartyId solver;
};

struct PartyOutcome {
  LpStatus status = LpStatus::kInfeasible;
  std::optional<TransformedProblem> transformed;  // at the solver
  std::optional<LpSolution> transformed_solution;  // y* at the solver
  // Reveal mode: x*. Share mode: this party's additive share of x*.
  RationalVector x;
  // This party's private transformation share.
  std::optional<Monomial> q;
  // Multi-party: published shares of (MQ, cᵀQ, b).
  RationalMatrix published_m;
  RationalVector published_c;
  RationalVector published_b;
};

struct PipelineResult {
  std::vector<PartyOutcome> parties;  // index = party-1
  Transcript transcript;
  PartyId solver;
  // Overall transformation assembled from the private shares (oracle use).
  Monomial q;
  bool transform_only = false;

  const PartyOutcome& at(PartyId id) const { return parties.at(id.index - 1); }
  LpStatus status() const { return at(solver).status; }
  // Original-problem objective (cᵀQ·y*) as computed by the solver.
  mpq_class objective() const;
  // x* assembled: the common value in reveal mode, the share sum otherwise.
  RationalVector solution() const;
};

// Secure scalar product: P1 holds x, P2 holds y.
struct ScalarProductOptions {
  int key_bits = kDefaultKeyBits;
  mpz_class entry_bound = mpz_class(1) << 32;  // public bound on |x_i|, |y_i|
};

struct ScalarProductResult {
  mpz_class r_a;  // held by P1
  mpz_class r_b;  // held by P2
  Transcript transcript;
};

ScalarProductResult SecureScalarProduct(const std::vector<mpz_class>& x,
                                        const std::vector<mpz_class>& y,
                                        const ScalarProductOptions& options,
                                        std::uint64_t seed);

// Enc(M) -> Enc(M·Q + mask), rerandomized. Q must have integer coefficients.
CipherMatrix HomomorphicRightMul(const PublicKey& pk, const CipherMatrix& c,
                                 const Monomial& q, const RationalMatrix* mask,
                                 const ScaleConfig& cfg, Rng& rng);

// P1 holds the objective c, P2 holds (M, b). Both pick private positive
// coefficients over a permutation chosen by P2, so Q = Q1 + Q2 is monomial.
// P2 obtains (M·Q, cᵀQ, b) and solves.
PipelineResult RunObjectiveConstraintSplit(const LpProblem& problem,
                                           const ProtocolConfig& cfg,
                                           std::uint64_t seed);

// Two parties with additive shares; P1 holds the key pair and obtains
// (M·Q2·Q1, cᵀQ2·Q1, b) unless another solver is configured.
PipelineResult RunTwoPartyArbitrary(const std::vector<PartyShare>& shares,
                                    const ProtocolConfig& cfg, std::uint64_t seed,
                                    bool negated_objective = false);

// l >= 3 parties with additive shares. Shares are right-multiplied by
// Q_1 … Q_l through a masked additive-share chain; published shares sum to
// (ΣM_i)·Q_1⋯Q_l and are aggregated at the solver (default P1).
PipelineResult RunMultiParty(const std::vector<PartyShare>& shares,
                             const ProtocolConfig& cfg, std::uint64_t seed,
                             bool negated_objective = false);

// Σ_i [Σ_{j≠i} R_(i,j) − Σ_{j≠i} R_(j,i)] for masks[i][j] = R_(i,j); the
// diagonal is ignored. Always the zero matrix.
RationalMatrix NetMaskSum(const std::vector<std::vector<RationalMatrix>>& masks);

// Largest per-entry mask magnitude that keeps every share of a chain of
// `steps` applications (coefficient bound `coeff`, starting bound `initial`
// on scaled entries, `parties` participants) inside the signed window `half`.
// Throws OverflowError when no positive mask fits.
mpz_class ChainMaskBound(const mpz_class& half, const mpz_class& initial,
                         const mpz_class& coeff, std::size_t steps,
                         std::size_t parties);

}  // namespace pplp

#endif  // PPLP_PROTOCOLS_H_
