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

#ifndef PPLP_PROBLEM_IO_H_
#define PPLP_PROBLEM_IO_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pplp/linalg.h"
#include "pplp/solver.h"

namespace pplp {

// Line-oriented problem text:
//   lp <m> <n> min|max
//   <n rationals: c>
//   <n rationals> <=|>= <rational>      (m rows)
// Rationals are integers or p/q. Blank lines and lines starting with '#' are
// ignored. Errors carry the 1-based line number.
RawProblem ParseProblem(std::istream& in);
RawProblem ParseProblemFile(const std::string& path);
void WriteProblem(std::ostream& out, const RawProblem& p);

// Additive shares of one problem. Each share is introduced by `share <k>`
// (k = 1..l, in order) and holds its own c line and m rows; row relations
// must agree across shares.
struct PartitionedProblem {
  Sense sense = Sense::kMinimize;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Relation> relations;
  std::vector<RawProblem> shares;

  RawProblem Sum() const;
  // Canonical form of every share (relations and sense applied share-wise).
  std::vector<LpProblem> CanonicalShares() const;
};

PartitionedProblem ParsePartition(std::istream& in);
PartitionedProblem ParsePartitionFile(const std::string& path);
void WritePartition(std::ostream& out, const PartitionedProblem& p);

mpq_class ParseRational(const std::string& token, std::size_t line);

// `Optimal obj=<v> x=<x1> <x2> ...`, `Infeasible`, or `Unbounded`.
std::string FormatSolution(const LpProblem& p, const LpSolution& s);

}  // namespace pplp

#endif  // PPLP_PROBLEM_IO_H_
