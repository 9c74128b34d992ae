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

#ifndef HOMFILL_FILLING_HPP_
#define HOMFILL_FILLING_HPP_

#include <optional>
#include <string>
#include <vector>

#include "homfill/cayley.hpp"

namespace homfill {

enum class Solver { kExactIlp, kBruteForce };
enum class FillStatus { kOptimal, kInfeasibleInBall, kBudgetExceeded };

std::string to_string(Solver s);
std::string to_string(FillStatus s);

struct FillOptions {
  Solver solver = Solver::kExactIlp;
  long node_budget = 20000;            // ILP relaxations
  long enumeration_budget = 5000000;   // brute-force search nodes
  // Brute force: per-cell |coefficient| cap, default max(1, max|gamma_e|).
  std::optional<Coeff> coefficient_bound;
  // Brute force: largest area tried before giving up.
  std::optional<Coeff> area_cap;
  int threads = 1;  // fa_estimate only
};

/// Minimal-area filling within the ball. `area` is meaningful only when
/// status is optimal.
struct FillingResult {
  TwoChain chain;
  Coeff area = 0;
  FillStatus status = FillStatus::kOptimal;
  int ball_radius = 0;
  long work = 0;  // ILP nodes or search nodes
};

/// Throws InputError if gamma is not a cycle on the ball's edges.
FillingResult harea_fill(const CayleyBall& ball, const OneCycle& gamma,
                         const FillOptions& opts = {});

/// Every chain of area exactly `area` filling gamma under the brute-force
/// coefficient bound, in discovery order, at most `limit` of them.
std::vector<TwoChain> enumerate_fillings(const CayleyBall& ball, const OneCycle& gamma,
                                         Coeff area, const FillOptions& opts,
                                         std::size_t limit);

/// Closed edge loop at the identity.
struct Loop {
  Word word;
  OneCycle cycle;
};

/// Reduced, cyclically reduced closed words at the identity of length
/// <= max_length, one per rotation class (the least rotation) and one per
/// cycle up to sign. Zero cycles are dropped. Sorted by (|gamma|, word).
std::vector<Loop> enumerate_loops(const CayleyBall& ball, int max_length);

/// Every nonzero 1-cycle of the ball with |gamma| <= max_length, found as
/// sums of signed edge loops (at any base vertex) whose lengths add up to at
/// most max_length. Sorted by (|gamma|, coefficients).
std::vector<OneCycle> enumerate_cycles(const CayleyBall& ball, int max_length);

enum class EnumerationScope { kLoopsOnly, kLoopsPlusSuperadditive };
std::string to_string(EnumerationScope s);

struct FAEntry {
  Coeff value = 0;
  std::optional<Word> witness;  // loop attaining the value at this n
  long cycles_examined = 0;     // cycles with |gamma| <= n
  long gaps = 0;                // cycles whose fill hit a budget
};

/// Ball-restricted lower bounds for FA(0..n_max).
struct FATable {
  std::vector<FAEntry> values;
  int ball_radius = 0;
  EnumerationScope scope = EnumerationScope::kLoopsOnly;

  std::vector<Coeff> as_array() const;
};

FATable fa_estimate(const CayleyBall& ball, int n_max,
                    EnumerationScope scope = EnumerationScope::kLoopsOnly,
                    const FillOptions& opts = {});
FATable fa_estimate(const GroupBackend& backend, const HomPresentation& pres, int n_max,
                    int ball_radius, EnumerationScope scope = EnumerationScope::kLoopsOnly,
                    const FillOptions& opts = {});

/// fbar(n) = max(f(n), max_{1<=k<n} fbar(k) + fbar(n-k)).
std::vector<Coeff> superadditive_closure(const std::vector<Coeff>& f);

/// Outcome of a finite-range comparison. Never a proof of the asymptotic
/// relation.
struct RelationCheck {
  bool holds = false;
  int constant = 0;  // smallest admissible C when holds
  int checked = 0;   // samples evaluated for that C
  int skipped = 0;   // samples whose argument fell outside the range
};

/// f <= g in the affine sense: f(n) <= C gbar(Cn+C) + Cn + C for n in
/// 1..N with Cn+C <= N. A candidate C is admissible only when at least half
/// of the samples are checkable.
RelationCheck check_preceq(const std::vector<Coeff>& f, const std::vector<Coeff>& g,
                           int c_max);

/// Two-sided f(n) <= C g(Cn) + C and g(n) <= C f(Cn) + C, same coverage
/// rule.
RelationCheck check_affine_equiv(const std::vector<Coeff>& f,
                                 const std::vector<Coeff>& g, int c_max);

/// Slack added to a cycle's radius when sizing a ball for filling.
int default_slack(const Presentation& p);

}  // namespace homfill

#endif  // HOMFILL_FILLING_HPP_
