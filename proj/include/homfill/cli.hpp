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

#ifndef HOMFILL_CLI_HPP_
#define HOMFILL_CLI_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "homfill/io.hpp"

namespace homfill {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitInvariant = 2;

struct RunConfig {
  std::string subcommand;  // fill fa surface constants pushdown arpair degree verify
  std::string pres;
  std::string word;
  std::string route;        // pushdown: stable-letter word the filling is routed through
  int ball = 0;             // 0: derived from the word length
  std::string solver = "ilp";
  std::size_t vertex_budget = kDefaultVertexBudget;
  long node_budget = 20000;
  long enumeration_budget = 5000000;
  unsigned long seed = 0;
  int max_n = 8;
  std::string policy = "min_area_then_measure_radius";
  std::string constants;    // degree: constants JSON
  std::optional<long> m;    // degree: M given directly
  std::string b = "1";
  std::string c = "1";
  std::optional<int> g;     // pushdown: g value for the theorem check
  int fa_max_n = 0;         // pushdown: compute an FA table of H up to this n
  std::string diagram;      // verify
  std::string out;
  std::string trace;
  std::string dot;
  std::string table;
  int threads = 1;
  int verbosity = 0;
  bool json_errors = false;
};

/// Applies HOMFILL_BUDGET_VERTICES when set. Throws InputError on a bad value.
void apply_environment(RunConfig& cfg);

/// Config echo embedded in outputs. Output paths are left out so the same
/// run written to different places produces identical bytes.
Json config_echo(const RunConfig& cfg);

/// Dispatches the subcommand. Primary output goes to `out` unless an output
/// path is configured; diagnostics go to `err`. Returns the exit status.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace homfill

#endif  // HOMFILL_CLI_HPP_
