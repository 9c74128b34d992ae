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

#include <iostream>

#include "CLI11.hpp"
#include "homfill/cli.hpp"

int main(int argc, char** argv) {
  using homfill::RunConfig;
  RunConfig cfg;
  CLI::App app{"homfill: homological fillings in balls of Cayley complexes"};
  app.set_version_flag("--version", homfill::kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json-errors", cfg.json_errors, "Report errors as JSON on stderr");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed recorded in every output");
  app.add_option("--out", cfg.out, "Write the JSON result here (atomically)");
  app.add_option("--table", cfg.table, "Write the plain-text table here");
  app.add_option("--vertex-budget", cfg.vertex_budget, "Maximum ball vertices");
  app.add_option("--node-budget", cfg.node_budget, "Branch-and-bound node budget");
  app.add_option("--enumeration-budget", cfg.enumeration_budget, "Brute-force node budget");
  app.add_flag("-v,--verbose", cfg.verbosity, "More diagnostics");

  auto pres = [&](CLI::App* s, bool required = true) {
    auto* o = s->add_option("--pres", cfg.pres, "Presentation file");
    if (required) o->required();
  };
  auto ball = [&](CLI::App* s) {
    s->add_option("--ball", cfg.ball, "Ball radius (default: derived from the input)");
  };
  auto solver = [&](CLI::App* s) {
    s->add_option("--solver", cfg.solver, "ilp or brute")
        ->check(CLI::IsMember({"ilp", "brute"}));
  };

  auto* fill = app.add_subcommand("fill", "Minimal-area filling of a loop");
  pres(fill);
  fill->add_option("--word", cfg.word, "Closed word read from the identity")->required();
  ball(fill);
  solver(fill);

  auto* fa = app.add_subcommand("fa", "Ball-restricted homological Dehn function table");
  pres(fa);
  fa->add_option("--max-n", cfg.max_n, "Largest cycle length")->required();
  ball(fa);
  solver(fa);

  auto* surface = app.add_subcommand("surface", "Surface diagram of a minimal filling");
  pres(surface);
  surface->add_option("--word", cfg.word, "Closed word read from the identity")->required();
  surface->add_option("--dot", cfg.dot, "Write the 1-skeleton as DOT");
  ball(surface);
  solver(surface);

  auto* constants = app.add_subcommand("constants", "Transfer constants of an extension");
  pres(constants);
  ball(constants);

  auto* pushdown = app.add_subcommand("pushdown", "Push an H-filling down into the kernel");
  pres(pushdown);
  pushdown->add_option("--word", cfg.word, "Loop in the kernel generators")->required();
  pushdown->add_option("--route", cfg.route, "Stable-letter word the filling is routed through");
  pushdown->add_option("--trace", cfg.trace, "Write the trace JSON here");
  pushdown->add_option("--g", cfg.g, "g value for the final bound");
  pushdown->add_option("--fa-max-n", cfg.fa_max_n, "Source f from an FA table of H up to n");
  ball(pushdown);

  auto* arpair = app.add_subcommand("arpair", "Measured area-radius pair");
  pres(arpair);
  arpair->add_option("--max-n", cfg.max_n, "Largest cycle length")->required();
  arpair->add_option("--policy", cfg.policy, "Filling policy")
      ->check(CLI::IsMember({"min_area_then_measure_radius", "min_radius_among_min_area",
                             "search_budgeted"}));
  ball(arpair);

  auto* degree = app.add_subcommand("degree", "Polynomial degree report for a hyperbolic pair");
  degree->add_option("--constants", cfg.constants, "Constants JSON from `homfill constants`");
  degree->add_option("--M", cfg.m, "M given directly");
  degree->add_option("--B", cfg.b, "Area coefficient (positive rational)");
  degree->add_option("--C", cfg.c, "Radius coefficient (positive rational)");
  degree->add_option("--max-n", cfg.max_n, "Largest n")->required();

  auto* verify = app.add_subcommand("verify", "Check a diagram JSON document");
  verify->add_option("--diagram", cfg.diagram, "Diagram JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : homfill::kExitDomain;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return homfill::run(cfg, std::cout, std::cerr);
}
