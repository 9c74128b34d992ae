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

#ifndef HOMFILL_EXPERIMENTS_HPP_
#define HOMFILL_EXPERIMENTS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homfill/backend.hpp"
#include "homfill/extension.hpp"
#include "homfill/filling.hpp"
#include "homfill/surface.hpp"

namespace homfill {

enum class FillingPolicy {
  kMinAreaThenMeasureRadius,
  kMinRadiusAmongMinArea,
  kSearchBudgeted,
};
std::string to_string(FillingPolicy p);
/// Throws InputError on an unknown name.
FillingPolicy parse_policy(const std::string& name);

struct ARPairOptions {
  FillingPolicy policy = FillingPolicy::kMinAreaThenMeasureRadius;
  FillOptions fill;
  // Candidate chains examined per cycle by the search policies.
  std::size_t candidate_limit = 64;
  // kSearchBudgeted also tries areas up to min area + this slack.
  Coeff area_slack = 1;
};

/// One sampled cycle together with the filling chosen for it.
struct ARSample {
  Word word;
  Coeff length = 0;
  Coeff area = 0;
  int radius = 0;
  long candidates = 0;
  bool truncated = false;  // the candidate search hit its limit
};

struct ARWitness {
  Word word;
  SurfaceDiagram diagram;
};

/// Tables are indexed 0..n_max; entry n is the max over samples with
/// length <= n, so both are nondecreasing.
struct ARPairReport {
  std::vector<Coeff> f_table;
  std::vector<int> g_table;
  std::vector<std::optional<ARWitness>> witnesses;  // attains g(n) at length n
  std::vector<ARSample> samples;
  FillingPolicy policy = FillingPolicy::kMinAreaThenMeasureRadius;
  int ball_radius = 0;
  long gaps = 0;  // cycles skipped for budget or ball reasons
};

/// Samples every loop at the identity of length <= n_max (exhaustive loop
/// enumeration) and records one filling per loop.
ARPairReport measure_ar_pair(const GroupBackend& backend, const HomPresentation& pres,
                             int n_max, int ball_radius, const ARPairOptions& opts = {});
ARPairReport measure_ar_pair(const CayleyBall& ball, int n_max,
                             const ARPairOptions& opts = {});

/// f(n) = B n (L(n) + 1), g(n) = C (L(n) + 1), rounded up, where L(n) is
/// log2 n at powers of two and ceil(log2 n) elsewhere.
struct HyperbolicARPair {
  std::string b;  // rational, canonical "p/q" or "p"
  std::string c;
  std::vector<Coeff> f;   // 0..n_max, f[0] = 0
  std::vector<Coeff> g;   // 0..n_max, g[0] = 0
  std::vector<bool> exact;  // L(n) is exact (n a power of two)
  bool f_at_least_n = false;
};

/// Throws InputError unless B, C parse as positive rationals and n_max >= 1.
HyperbolicARPair hyperbolic_ar_pair(const std::string& b, const std::string& c, int n_max);

/// L(n) from the table above.
int log2_upper(long n);

struct DegreeReport {
  Coeff m = 1;
  std::vector<std::string> composite;  // (M^2)^g(n) f(n), decimal, 0..n_max
  int degree = 0;                      // fitted d, log factor stripped
  double slope = 0;
  std::string kappa;                   // composite <= kappa n^d (L+1)
  double symbolic_exponent = 0;        // 1 + 2 C log2 M
  std::string caveat;
};

DegreeReport polynomial_degree_report(Coeff m, const HyperbolicARPair& hyp);
DegreeReport polynomial_degree_report(const TransferConstants& k, const HyperbolicARPair& hyp);

/// Generator name -> word in the other presentation's generators.
using GeneratorDictionary = std::map<std::string, std::string>;

struct EquivalenceReport {
  ARPairReport a;
  ARPairReport b;
  RelationCheck f_a_below_b;
  RelationCheck f_b_below_a;
  RelationCheck g_equiv;
  bool holds = false;
  int spot_checks = 0;
};

/// Throws InputError when the dictionaries fail a spot check: a relator not
/// mapping to the identity, or a generator not surviving the round trip.
EquivalenceReport compare_presentations(const Group& a, const Group& b,
                                        const GeneratorDictionary& a_to_b,
                                        const GeneratorDictionary& b_to_a, int n_max,
                                        int ball_radius, int c_max = 64,
                                        const ARPairOptions& opts = {});

}  // namespace homfill

#endif  // HOMFILL_EXPERIMENTS_HPP_
