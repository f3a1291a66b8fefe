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

#ifndef PPLP_SOLVER_H_
#define PPLP_SOLVER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pplp/linalg.h"

namespace pplp {

enum class Relation { kLessEqual, kGreaterEqual };
enum class Sense { kMinimize, kMaximize };

// A problem as written by a user: mixed row relations, either sense.
struct RawProblem {
  Sense sense = Sense::kMinimize;
  RationalVector c;
  RationalMatrix m;
  std::vector<Relation> relations;
  RationalVector b;
};

// Canonical form: minimize cᵀx subject to Mx <= b, x >= 0.
struct LpProblem {
  RationalVector c;
  RationalMatrix m;
  RationalVector b;
  // Set when the source maximized; reported objectives are negated back.
  bool negated_objective = false;

  std::size_t num_vars() const { return c.size(); }
  std::size_t num_rows() const { return b.size(); }
  void Validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };
std::string ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  RationalVector x;    // present iff optimal
  mpq_class objective;  // minimization objective cᵀx, valid iff optimal
};

// >= rows are negated into <= rows; maximize becomes minimize of -c.
LpProblem Canonicalize(const RawProblem& raw);

// Two-phase simplex over exact rationals with Bland's rule for both the
// entering and the leaving variable. Deterministic for a given input.
LpSolution SimplexSolve(const LpProblem& p);

// Objective in the sense of the original (possibly maximizing) problem.
mpq_class ReportedObjective(const LpProblem& p, const LpSolution& s);

struct FeasibilityReport {
  bool feasible = false;
  RationalVector slack;                   // b - Mx per row
  std::vector<std::size_t> violated_rows;  // slack < 0
  std::vector<std::size_t> negative_vars;  // x_j < 0
  mpq_class objective;
};

FeasibilityReport VerifySolution(const LpProblem& p, const RationalVector& x);

// (MQ, cᵀQ, b): the disguised problem whose optimum y satisfies x = Qy.
LpProblem TransformProblem(const LpProblem& p, const Monomial& q);

}  // namespace pplp

#endif  // PPLP_SOLVER_H_
