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

#include "homfill/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "homfill/error.hpp"

namespace homfill {

namespace {

struct Outcome {
  Json result;
  int ball_radius = 0;
  std::string text;  // plain-text tables, printed when JSON goes to a file
  int status = kExitOk;
  std::string message;  // reported on stderr when status != 0
};

FillOptions fill_options(const RunConfig& cfg) {
  FillOptions o;
  if (cfg.solver == "ilp") o.solver = Solver::kExactIlp;
  else if (cfg.solver == "brute") o.solver = Solver::kBruteForce;
  else throw InputError("unknown solver '" + cfg.solver + "' (expected ilp or brute)");
  o.node_budget = cfg.node_budget;
  o.enumeration_budget = cfg.enumeration_budget;
  o.threads = cfg.threads;
  return o;
}

Group load(const RunConfig& cfg) {
  if (cfg.pres.empty()) throw InputError("--pres is required");
  return load_group(cfg.pres);
}

const std::string& need_word(const RunConfig& cfg) {
  if (cfg.word.empty()) throw InputError("--word is required");
  return cfg.word;
}

int radius_for_word(const RunConfig& cfg, const Presentation& p, std::size_t length) {
  if (cfg.ball > 0) return cfg.ball;
  return static_cast<int>((length + 1) / 2) + default_slack(p);
}

Outcome fill_status(const FillingResult& r, Outcome o) {
  if (r.status == FillStatus::kInfeasibleInBall) {
    o.status = kExitDomain;
    o.message = "cycle has no filling inside the ball of radius " + std::to_string(r.ball_radius);
  } else if (r.status == FillStatus::kBudgetExceeded) {
    o.status = kExitDomain;
    o.message = "solver budget exceeded";
  }
  return o;
}

Outcome cmd_fill(const RunConfig& cfg) {
  const Group g = load(cfg);
  const Word w = g.pres.base.parse_word(need_word(cfg));
  const CayleyBall ball = CayleyBall::build(g.backend, g.pres,
                                            radius_for_word(cfg, g.pres.base, w.size()),
                                            cfg.vertex_budget);
  const OneCycle gamma = loop_to_cycle(ball, ball.identity(), w);
  const FillingResult r = harea_fill(ball, gamma, fill_options(cfg));
  Outcome o;
  o.ball_radius = ball.radius();
  o.result = to_json(ball, gamma, r);
  o.result["word"] = g.pres.base.format(w);
  o.result["solver"] = to_string(fill_options(cfg).solver);
  return fill_status(r, std::move(o));
}

Outcome cmd_fa(const RunConfig& cfg) {
  const Group g = load(cfg);
  if (cfg.max_n < 1) throw InputError("--max-n must be at least 1");
  const int radius = radius_for_word(cfg, g.pres.base, static_cast<std::size_t>(cfg.max_n));
  const CayleyBall ball = CayleyBall::build(g.backend, g.pres, radius, cfg.vertex_budget);
  const FATable t = fa_estimate(ball, cfg.max_n, EnumerationScope::kLoopsOnly, fill_options(cfg));
  Outcome o;
  o.ball_radius = radius;
  o.result = to_json(t, g.pres.base);
  o.text = two_column_table(t.as_array(), "FA(n)");
  return o;
}

Outcome cmd_surface(const RunConfig& cfg) {
  const Group g = load(cfg);
  const Word w = g.pres.base.parse_word(need_word(cfg));
  const CayleyBall ball = CayleyBall::build(g.backend, g.pres,
                                            radius_for_word(cfg, g.pres.base, w.size()),
                                            cfg.vertex_budget);
  const OneCycle gamma = loop_to_cycle(ball, ball.identity(), w);
  const FillingResult r = harea_fill(ball, gamma, fill_options(cfg));
  Outcome o;
  o.ball_radius = ball.radius();
  o.result["fill"] = to_json(ball, gamma, r);
  if (r.status != FillStatus::kOptimal || r.chain.empty()) {
    o.result["diagram"] = nullptr;
    return fill_status(r, std::move(o));
  }
  const SurfaceDiagram s = assemble_surface(ball, r.chain);
  const VerificationReport rep = verify_surface(s);
  o.result["diagram"] = to_json(s);
  o.result["verification"] = to_json(rep);
  o.result["boundary_matches"] = project_boundary(s) == gamma;
  if (!cfg.dot.empty()) atomic_write(cfg.dot, to_dot(s, &g.pres.base));
  if (!rep.ok()) {
    o.status = kExitInvariant;
    o.message = "assembled diagram failed verification: " + rep.violations.front();
  }
  return o;
}

void need_extension(const Group& g) {
  if (!g.is_extension()) throw InputError("this subcommand needs an extension presentation");
}

Outcome cmd_constants(const RunConfig& cfg) {
  const Group g = load(cfg);
  need_extension(g);
  const int radius = cfg.ball > 0 ? cfg.ball : 4;
  const CayleyBall kb =
      CayleyBall::build(*g.kernel_backend, *g.kernel_pres, radius, cfg.vertex_budget);
  const TransferConstants k = compute_constants(g, kb, fill_options(cfg));
  Outcome o;
  o.ball_radius = radius;
  o.result = to_json(k, g.kernel_pres->base);
  return o;
}

Word parse_route(const Group& g, const std::string& text) {
  Word out;
  for (Letter l : g.pres.base.parse_word(text)) {
    const int gen = generator_of(l) - g.pres.kernel_rank;
    if (gen < 0) throw InputError("route word may only use stable letters");
    out.push_back(make_letter(gen, is_inverse(l)));
  }
  return out;
}

Outcome cmd_pushdown(const RunConfig& cfg) {
  const Group g = load(cfg);
  need_extension(g);
  const Word kw = g.kernel_pres->base.parse_word(need_word(cfg));
  const int radius = radius_for_word(cfg, g.pres.base, kw.size());
  const CayleyBall hb = CayleyBall::build(g.backend, g.pres, radius, cfg.vertex_budget);
  const CayleyBall kb =
      CayleyBall::build(*g.kernel_backend, *g.kernel_pres, radius, cfg.vertex_budget);
  const FillOptions opts = fill_options(cfg);
  const TransferConstants k = compute_constants(g, kb, opts);
  const Router router(g, hb, kb, k, opts);

  OneCycle gamma;
  TwoChain c;
  if (!cfg.route.empty()) {
    auto routed = router.route(kw, parse_route(g, cfg.route));
    gamma = std::move(routed.gamma);
    c = std::move(routed.chain);
  } else {
    gamma = router.embed(Word{}, loop_to_cycle(kb, kb.identity(), kw));
    const FillingResult r = harea_fill(hb, gamma, opts);
    if (r.status != FillStatus::kOptimal) {
      Outcome o;
      o.ball_radius = radius;
      o.result["fill"] = to_json(hb, gamma, r);
      return fill_status(r, std::move(o));
    }
    c = r.chain;
  }

  std::vector<Coeff> table;
  std::string source = "instance";
  if (cfg.fa_max_n > 0) {
    table = fa_estimate(hb, cfg.fa_max_n, EnumerationScope::kLoopsOnly, opts).as_array();
    source = "fa_table+instance";
  }
  const PushdownTrace trace =
      push_down(hb, kb, g, gamma, c, k, instance_f_value(table, gamma, c), source);
  const int g_value = cfg.g.value_or(trace.max_depth);
  const BoundReport bound = verify_theorem_bound(trace, g_value);
  const FillingResult direct = harea_fill(kb, boundary_2(kb, trace.final_k_chain), opts);

  Outcome o;
  o.ball_radius = radius;
  o.result["trace"] = to_json(trace, g.pres);
  o.result["bound_report"] = to_json(bound);
  o.result["constants"] = {{"C", k.c}, {"C_prime", k.c_prime}, {"C_double_prime", k.c_double_prime},
                           {"rho", k.rho}, {"M", k.m}};
  o.result["direct_k_area"] =
      direct.status == FillStatus::kOptimal ? Json(direct.area) : Json(nullptr);
  if (!cfg.trace.empty()) atomic_write(cfg.trace, dump(o.result["trace"]));
  if (!bound.pass) {
    o.status = kExitInvariant;
    o.message = "push-down bound check failed";
  }
  return o;
}

Outcome cmd_arpair(const RunConfig& cfg) {
  const Group g = load(cfg);
  if (cfg.max_n < 1) throw InputError("--max-n must be at least 1");
  const int radius = radius_for_word(cfg, g.pres.base, static_cast<std::size_t>(cfg.max_n));
  const CayleyBall ball = CayleyBall::build(g.backend, g.pres, radius, cfg.vertex_budget);
  ARPairOptions opts;
  opts.policy = parse_policy(cfg.policy);
  opts.fill = fill_options(cfg);
  const ARPairReport r = measure_ar_pair(ball, cfg.max_n, opts);
  Outcome o;
  o.ball_radius = radius;
  o.result = to_json(r, g.pres.base);
  o.text = two_column_table(r.f_table, "f(n)") +
           two_column_table(std::vector<Coeff>(r.g_table.begin(), r.g_table.end()), "g(n)");
  return o;
}

Outcome cmd_degree(const RunConfig& cfg) {
  long m = 0;
  int radius = 0;
  if (cfg.m) {
    m = *cfg.m;
  } else if (!cfg.constants.empty()) {
    std::ifstream f(cfg.constants);
    if (!f) throw InputError("cannot read constants file '" + cfg.constants + "'");
    const Json doc = Json::parse(f);
    const Json& k = doc.contains("result") ? doc.at("result") : doc;
    m = k.at("M").get<long>();
    radius = k.value("k_ball_radius", doc.value("ball_radius", 0));
  } else {
    throw InputError("degree needs --constants FILE or --M value");
  }
  const HyperbolicARPair hyp = hyperbolic_ar_pair(cfg.b, cfg.c, cfg.max_n);
  const DegreeReport d = polynomial_degree_report(m, hyp);
  Outcome o;
  o.ball_radius = radius;
  o.result["hyperbolic"] = to_json(hyp);
  o.result["degree"] = to_json(d);
  o.text = two_column_table(d.composite, "composite(n)");
  return o;
}

Outcome cmd_verify(const RunConfig& cfg) {
  if (cfg.diagram.empty()) throw InputError("--diagram is required");
  std::ifstream f(cfg.diagram);
  if (!f) throw InputError("cannot read diagram file '" + cfg.diagram + "'");
  const Json doc = Json::parse(f);
  const SurfaceDiagram s = diagram_from_json(doc);
  const VerificationReport rep = verify_surface(s);
  Outcome o;
  o.ball_radius = doc.value("ball_radius", 0);
  o.result["verification"] = to_json(rep);
  if (rep.ok()) {
    o.result["metrics"] = to_json(measure(s));
  } else {
    o.status = kExitDomain;
    o.message = std::to_string(rep.violations.size()) + " violation(s); first: " +
                rep.violations.front();
  }
  return o;
}

Outcome dispatch(const RunConfig& cfg) {
  if (cfg.subcommand == "fill") return cmd_fill(cfg);
  if (cfg.subcommand == "fa") return cmd_fa(cfg);
  if (cfg.subcommand == "surface") return cmd_surface(cfg);
  if (cfg.subcommand == "constants") return cmd_constants(cfg);
  if (cfg.subcommand == "pushdown") return cmd_pushdown(cfg);
  if (cfg.subcommand == "arpair") return cmd_arpair(cfg);
  if (cfg.subcommand == "degree") return cmd_degree(cfg);
  if (cfg.subcommand == "verify") return cmd_verify(cfg);
  throw InputError("unknown subcommand '" + cfg.subcommand + "'");
}

void report_error(const RunConfig& cfg, std::ostream& err, const std::string& kind,
                  const std::string& message, int status) {
  if (cfg.json_errors) {
    err << Json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", status}}}}.dump()
        << "\n";
  } else {
    err << "homfill: " << kind << ": " << message << "\n";
  }
}

}  // namespace

void apply_environment(RunConfig& cfg) {
  const char* v = std::getenv("HOMFILL_BUDGET_VERTICES");
  if (!v || !*v) return;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0)
    throw InputError(std::string("HOMFILL_BUDGET_VERTICES must be a positive integer, got '") +
                     v + "'");
  cfg.vertex_budget = static_cast<std::size_t>(n);
}

Json config_echo(const RunConfig& cfg) {
  Json j{{"subcommand", cfg.subcommand},
         {"pres", cfg.pres},
         {"word", cfg.word},
         {"route", cfg.route},
         {"ball", cfg.ball},
         {"solver", cfg.solver},
         {"vertex_budget", cfg.vertex_budget},
         {"node_budget", cfg.node_budget},
         {"enumeration_budget", cfg.enumeration_budget},
         {"seed", cfg.seed},
         {"max_n", cfg.max_n},
         {"policy", cfg.policy},
         {"constants", cfg.constants},
         {"B", cfg.b},
         {"C", cfg.c},
         {"fa_max_n", cfg.fa_max_n},
         {"diagram", cfg.diagram},
         {"threads", cfg.threads}};
  j["M"] = cfg.m ? Json(*cfg.m) : Json(nullptr);
  j["g"] = cfg.g ? Json(*cfg.g) : Json(nullptr);
  return j;
}

int run(const RunConfig& cfg_in, std::ostream& out, std::ostream& err) {
  RunConfig cfg = cfg_in;
  try {
    apply_environment(cfg);
    if (cfg.vertex_budget == 0 || cfg.node_budget <= 0 || cfg.enumeration_budget <= 0 ||
        cfg.threads <= 0)
      throw InputError("budgets and thread counts must be positive");
    Outcome o = dispatch(cfg);
    const Json doc = envelope(config_echo(cfg), o.ball_radius, cfg.seed, std::move(o.result));
    if (cfg.out.empty()) {
      out << dump(doc);
    } else {
      atomic_write(cfg.out, dump(doc));
      const auto now = std::chrono::system_clock::now().time_since_epoch();
      atomic_write(cfg.out + ".meta.json",
                   dump(Json{{"written_unix_ms",
                              std::chrono::duration_cast<std::chrono::milliseconds>(now).count()},
                             {"version", kToolVersion}}));
      out << o.text;
    }
    if (!cfg.table.empty()) atomic_write(cfg.table, o.text);
    if (o.status != kExitOk) report_error(cfg, err, "domain", o.message, o.status);
    return o.status;
  } catch (const InvariantError& e) {
    report_error(cfg, err, "invariant", e.what(), kExitInvariant);
    return kExitInvariant;
  } catch (const InputError& e) {
    report_error(cfg, err, "input", e.what(), kExitDomain);
    return kExitDomain;
  } catch (const ResourceError& e) {
    report_error(cfg, err, "resource", e.what(), kExitDomain);
    return kExitDomain;
  } catch (const Json::exception& e) {
    report_error(cfg, err, "input", e.what(), kExitDomain);
    return kExitDomain;
  } catch (const std::exception& e) {
    report_error(cfg, err, "internal", e.what(), kExitInvariant);
    return kExitInvariant;
  }
}

}  // namespace homfill
