// Copyright 2026 The homfill Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOMFILL_LP_HPP_
#define HOMFILL_LP_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace homfill {

/// min cost.x  subject to  A x = rhs,  x >= 0,  x integer.
/// A is given column-wise as sparse (row, value) lists.
struct IlpProblem {
  int rows = 0;
  std::vector<std::vector<std::pair<int, std::int64_t>>> columns;
  std::vector<std::int64_t> rhs;
  std::vector<std::int64_t> cost;  // one per column, all >= 0

  int cols() const { return static_cast<int>(columns.size()); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };
enum class IlpStatus { kOptimal, kInfeasible, kBudgetExceeded };

/// Exact LP optimum; values are reduced fractions "p/q" or integers "p".
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<std::string> x;
  std::string objective;
};

struct IlpResult {
  IlpStatus status = IlpStatus::kInfeasible;
  std::vector<std::int64_t> x;
  std::int64_t objective = 0;
  long nodes = 0;           // LP relaxations solved
  bool used_bignum = false;  // int64 rationals overflowed, reran with GMP
};

/// Two-phase dense simplex over exact rationals, Dantzig pricing with a
/// switch to Bland's rule on degeneracy stalls. Deterministic.
LpSolution solve_lp(const IlpProblem& p);

/// Depth-first branch and bound on the exact relaxation. Branches on the
/// most fractional variable (ties: lowest index), down-branch first. Each
/// relaxation counts one node against `node_budget`.
IlpResult solve_ilp(const IlpProblem& p, long node_budget);

}  // namespace homfill

#endif  // HOMFILL_LP_HPP_
