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

#ifndef PPLP_ATTACK_H_
#define PPLP_ATTACK_H_

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "pplp/linalg.h"
#include "pplp/random.h"
#include "pplp/runtime.h"
#include "pplp/solver.h"

namespace pplp {

inline constexpr std::size_t kMaxAttackDim = 9;

struct AttackInput {
  std::optional<RationalVector> c;  // original objective
  RationalVector c_q;               // transformed objective cᵀQ
  std::optional<RationalVector> y_star;
  std::optional<RationalVector> x_star;
};

struct AttackCandidate {
  Monomial q;
  // False where no evidence pins the coefficient; it is reported as 1.
  std::vector<bool> determined;

  bool fully_determined() const;
};

struct AttackResult {
  std::vector<AttackCandidate> candidates;
  // Exactly one candidate and every coefficient pinned by the evidence.
  bool unique = false;
};

// Enumerates every positive monomial Q consistent with the evidence. Throws
// DimensionError on mismatched lengths and std::invalid_argument for n > 9.
AttackResult BednarzEnumerate(const AttackInput& input);

enum class AttackScenario { kObjectiveConstraintSplit, kTwoPartyArbitrary };

// Knowledge an attacker holds outside the transcript.
struct SideKnowledge {
  std::optional<RationalVector> c;
  std::optional<RationalVector> x_star;
};

// Evidence the named party can read from its own view of a run.
AttackInput EvidenceFromTranscript(const Transcript& transcript, PartyId attacker,
                                   const SideKnowledge& side = {});

AttackResult AuditProtocolRun(const Transcript& transcript, PartyId attacker,
                              AttackScenario scenario, const SideKnowledge& side = {});

// min cᵀx, Mx <= b, x >= 0 with M square invertible, x* > 0 the unique
// optimum, c = -λᵀM for λ > 0, c entries pairwise distinct and nonzero, and
// the products c_i·x*_i pairwise distinct.
struct GenericInstance {
  LpProblem problem;
  RationalVector x_star;
};

GenericInstance GenerateGenericInstance(std::size_t n, Rng& rng, long entry_bound = 5);

}  // namespace pplp

#endif  // PPLP_ATTACK_H_
