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

#include "pplp/solver.h"

#include <utility>

#include "pplp/error.h"

namespace pplp {
namespace {

// Dense tableau in canonical form with respect to `basis`: row i expresses
// basic variable basis[i]; the last column holds the basic values.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t vars)
      : rows_(rows), vars_(vars), cells_(rows * (vars + 1)), basis_(rows) {}

  mpq_class& at(std::size_t r, std::size_t c) { return cells_[r * (vars_ + 1) + c]; }
  const mpq_class& at(std::size_t r, std::size_t c) const {
    return cells_[r * (vars_ + 1) + c];
  }
  mpq_class& rhs(std::size_t r) { return at(r, vars_); }
  std::size_t rows() const { return rows_; }
  std::size_t vars() const { return vars_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void Pivot(std::size_t row, std::size_t col) {
    const mpq_class pivot = at(row, col);
    for (std::size_t c = 0; c <= vars_; ++c) at(row, c) /= pivot;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const mpq_class factor = at(r, col);
      if (factor == 0) continue;
      for (std::size_t c = 0; c <= vars_; ++c) {
        if (at(row, c) != 0) at(r, c) -= factor * at(row, c);
      }
    }
    basis_[row] = col;
  }

  void DropRow(std::size_t row) {
    cells_.erase(cells_.begin() + row * (vars_ + 1),
                 cells_.begin() + (row + 1) * (vars_ + 1));
    basis_.erase(basis_.begin() + row);
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t vars_;
  std::vector<mpq_class> cells_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { kOptimal, kUnbounded };

// Minimizes cost·z over the tableau, only letting columns < allowed enter.
PhaseResult RunPhase(Tableau& t, const std::vector<mpq_class>& cost,
                     std::size_t allowed) {
  for (;;) {
    // Reduced cost d_j = cost_j - sum_i cost_{basis[i]} * T[i][j].
    std::size_t entering = allowed;
    for (std::size_t j = 0; j < allowed; ++j) {
      mpq_class d = cost[j];
      for (std::size_t i = 0; i < t.rows(); ++i) {
        const mpq_class& a = t.at(i, j);
        if (a != 0 && cost[t.basis()[i]] != 0) d -= cost[t.basis()[i]] * a;
      }
      if (d < 0) {
        entering = j;
        break;
      }
    }
    if (entering == allowed) return PhaseResult::kOptimal;

    std::size_t leaving = t.rows();
    mpq_class best_ratio;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const mpq_class& a = t.at(i, entering);
      if (a <= 0) continue;
      mpq_class ratio = t.rhs(i) / a;
      if (leaving == t.rows() || ratio < best_ratio ||
          (ratio == best_ratio && t.basis()[i] < t.basis()[leaving])) {
        leaving = i;
        best_ratio = std::move(ratio);
      }
    }
    if (leaving == t.rows()) return PhaseResult::kUnbounded;
    t.Pivot(leaving, entering);
  }
}

}  // namespace

void LpProblem::Validate() const {
  if (c.empty()) throw DimensionError("LP needs at least one variable");
  if (m.cols() != c.size() || m.rows() != b.size()) {
    throw DimensionError("LP dimensions inconsistent: c has " +
                         std::to_string(c.size()) + ", M is " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", b has " + std::to_string(b.size()));
  }
}

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "Optimal";
    case LpStatus::kInfeasible:
      return "Infeasible";
    case LpStatus::kUnbounded:
      return "Unbounded";
  }
  return "Unknown";
}

LpProblem Canonicalize(const RawProblem& raw) {
  if (raw.m.cols() != raw.c.size() || raw.m.rows() != raw.b.size() ||
      raw.relations.size() != raw.b.size()) {
    throw DimensionError("raw LP dimensions inconsistent");
  }
  LpProblem p;
  p.c = raw.c;
  p.m = raw.m;
  p.b = raw.b;
  if (raw.sense == Sense::kMaximize) {
    for (auto& v : p.c) v = -v;
    p.negated_objective = true;
  }
  for (std::size_t r = 0; r < raw.relations.size(); ++r) {
    if (raw.relations[r] != Relation::kGreaterEqual) continue;
    for (std::size_t j = 0; j < p.m.cols(); ++j) p.m(r, j) = -p.m(r, j);
    p.b[r] = -p.b[r];
  }
  return p;
}

LpSolution SimplexSolve(const LpProblem& p) {
  p.Validate();
  const std::size_t n = p.num_vars();
  const std::size_t m = p.num_rows();

  std::vector<std::size_t> needs_artificial;
  for (std::size_t i = 0; i < m; ++i)
    if (p.b[i] < 0) needs_artificial.push_back(i);
  const std::size_t structural = n + m;  // x then slacks
  const std::size_t total = structural + needs_artificial.size();

  Tableau t(m, total);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = p.b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = flip ? mpq_class(-p.m(i, j)) : p.m(i, j);
    t.at(i, n + i) = flip ? -1 : 1;
    t.rhs(i) = flip ? mpq_class(-p.b[i]) : p.b[i];
    t.basis()[i] = n + i;
  }
  for (std::size_t k = 0; k < needs_artificial.size(); ++k) {
    const std::size_t row = needs_artificial[k];
    t.at(row, structural + k) = 1;
    t.basis()[row] = structural + k;
  }

  if (!needs_artificial.empty()) {
    std::vector<mpq_class> phase1(total);
    for (std::size_t k = structural; k < total; ++k) phase1[k] = 1;
    RunPhase(t, phase1, total);  // bounded below by zero
    mpq_class infeasibility = 0;
    for (std::size_t i = 0; i < t.rows(); ++i)
      if (t.basis()[i] >= structural) infeasibility += t.rhs(i);
    if (infeasibility > 0) return LpSolution{LpStatus::kInfeasible, {}, 0};

    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows();) {
      if (t.basis()[i] < structural) {
        ++i;
        continue;
      }
      std::size_t col = structural;
      for (std::size_t j = 0; j < structural; ++j) {
        if (t.at(i, j) != 0) {
          col = j;
          break;
        }
      }
      if (col == structural) {
        t.DropRow(i);
      } else {
        t.Pivot(i, col);
        ++i;
      }
    }
  }

  std::vector<mpq_class> phase2(total);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = p.c[j];
  if (RunPhase(t, phase2, structural) == PhaseResult::kUnbounded) {
    return LpSolution{LpStatus::kUnbounded, {}, 0};
  }

  LpSolution s;
  s.status = LpStatus::kOptimal;
  s.x.assign(n, mpq_class(0));
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (t.basis()[i] < n) s.x[t.basis()[i]] = t.rhs(i);
  s.objective = Dot(p.c, s.x);
  return s;
}

mpq_class ReportedObjective(const LpProblem& p, const LpSolution& s) {
  return p.negated_objective ? mpq_class(-s.objective) : s.objective;
}

FeasibilityReport VerifySolution(const LpProblem& p, const RationalVector& x) {
  p.Validate();
  if (x.size() != p.num_vars()) throw DimensionError("solution length != variables");
  FeasibilityReport rep;
  rep.slack = p.b - p.m * x;
  for (std::size_t i = 0; i < rep.slack.size(); ++i)
    if (rep.slack[i] < 0) rep.violated_rows.push_back(i);
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < 0) rep.negative_vars.push_back(j);
  rep.objective = Dot(p.c, x);
  rep.feasible = rep.violated_rows.empty() && rep.negative_vars.empty();
  return rep;
}

LpProblem TransformProblem(const LpProblem& p, const Monomial& q) {
  p.Validate();
  LpProblem out;
  out.m = RightApply(p.m, q);
  out.c = RightApply(p.c, q);
  out.b = p.b;
  out.negated_objective = p.negated_objective;
  return out;
}

}  // namespace pplp
