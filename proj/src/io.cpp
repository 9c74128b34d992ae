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

#include "homfill/io.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "homfill/error.hpp"

namespace homfill {

Json envelope(const Json& config, int ball_radius, unsigned long seed, Json result) {
  Json j;
  j["tool"] = "homfill";
  j["version"] = kToolVersion;
  j["config"] = config;
  j["ball_radius"] = ball_radius;
  j["caveat"] = kBallCaveat;
  j["seed"] = seed;
  j["result"] = std::move(result);
  return j;
}

namespace {

Json letters(std::span<const Letter> w) {
  Json a = Json::array();
  for (Letter l : w) a.push_back(l);
  return a;
}

Json coset_text(std::span<const Letter> coset, const HomPresentation& h) {
  Word w;
  for (Letter l : coset) w.push_back(make_letter(h.kernel_rank + generator_of(l), is_inverse(l)));
  return h.base.format(w);
}

}  // namespace

Json to_json(const CayleyBall& ball) {
  const Presentation& p = ball.presentation().base;
  Json j;
  j["radius"] = ball.radius();
  Json vs = Json::array();
  for (const Word& w : ball.vertices()) vs.push_back(p.format(w));
  j["vertices"] = std::move(vs);
  Json es = Json::array();
  for (const Edge& e : ball.edges())
    es.push_back({e.source, p.generators()[static_cast<std::size_t>(e.generator)], e.target});
  j["edges"] = std::move(es);
  Json cs = Json::array();
  for (const Cell& c : ball.cells()) {
    Json bd = Json::array();
    for (const EdgeStep& s : c.walk) bd.push_back(s.sign * (s.edge + 1));
    cs.push_back({c.base, c.relator, std::move(bd)});
  }
  j["cells"] = std::move(cs);
  j["cell_boundary_encoding"] = "signed 1-based edge index per relator letter";
  return j;
}

Json to_json(const CayleyBall& ball, const OneCycle& gamma) {
  Json a = Json::array();
  for (const auto& [e, m] : gamma) {
    const Edge& edge = ball.edge(e);
    a.push_back({{"edge", e},
                 {"coeff", m},
                 {"source", edge.source},
                 {"label", ball.presentation().base.generators()[static_cast<std::size_t>(edge.generator)]},
                 {"target", edge.target}});
  }
  return a;
}

Json to_json(const TwoChain& c) {
  Json a = Json::array();
  for (const auto& [cell, m] : c) a.push_back({cell, m});
  return a;
}

Json to_json(const CayleyBall& ball, const OneCycle& gamma, const FillingResult& r) {
  Json j;
  j["cycle"] = to_json(ball, gamma);
  j["length"] = gamma.l1();
  j["status"] = to_string(r.status);
  if (r.status == FillStatus::kOptimal) j["area"] = r.area;
  else j["area"] = nullptr;
  j["chain"] = to_json(r.chain);
  j["ball_radius"] = r.ball_radius;
  j["work"] = r.work;
  return j;
}

Json to_json(const FATable& t, const Presentation& p) {
  Json j;
  j["ball_radius"] = t.ball_radius;
  j["scope"] = to_string(t.scope);
  Json rows = Json::array();
  for (std::size_t n = 0; n < t.values.size(); ++n) {
    const FAEntry& e = t.values[n];
    rows.push_back({{"n", n},
                    {"value", e.value},
                    {"witness", e.witness ? Json(p.format(*e.witness)) : Json(nullptr)},
                    {"cycles_examined", e.cycles_examined},
                    {"gaps", e.gaps}});
  }
  j["values"] = std::move(rows);
  j["kind"] = "ball-restricted lower bound";
  return j;
}

Json to_json(const SurfaceDiagram& s) {
  Json j;
  Json faces = Json::array();
  Json prov = Json::array();
  for (const Face& f : s.faces) {
    Json fj;
    fj["labels"] = letters(f.labels);
    fj["corners"] = f.corners;
    fj["sign"] = f.sign;
    fj["cell"] = f.cell ? Json(*f.cell) : Json(nullptr);
    Json img = Json::array();
    for (const SlotImage& im : f.image) img.push_back({im.edge, im.sign, im.from});
    fj["image"] = std::move(img);
    faces.push_back(std::move(fj));
    prov.push_back(f.cell ? Json(*f.cell) : Json(nullptr));
  }
  j["faces"] = std::move(faces);
  Json gl = Json::array();
  for (const auto& [a, b] : s.gluing) gl.push_back({{a.face, a.slot}, {b.face, b.slot}});
  j["gluing"] = std::move(gl);
  j["provenance"] = std::move(prov);
  j["vertex_count"] = s.vertex_count;
  Json vi = Json::array();
  for (const auto& v : s.vertex_image) vi.push_back(v ? Json(*v) : Json(nullptr));
  j["vertex_image"] = std::move(vi);
  Json bp = Json::array();
  for (const auto& path : s.boundary_paths) {
    Json pj = Json::array();
    for (const SlotRef& r : path) pj.push_back({r.face, r.slot});
    bp.push_back(std::move(pj));
  }
  j["boundary_paths"] = std::move(bp);
  if (verify_surface(s).ok()) j["metrics"] = to_json(measure(s));
  return j;
}

Json to_json(const SurfaceMetrics& m) {
  Json j;
  j["area"] = m.area;
  j["radius"] = m.radius ? Json(*m.radius) : Json(nullptr);
  j["boundary_length"] = m.boundary_length;
  j["component_count"] = m.component_count;
  j["euler_characteristic"] = m.euler_characteristic;
  j["boundary_component_count"] = m.boundary_component_count;
  j["interior_vertex_count"] = m.interior_vertex_count;
  j["orientable"] = m.orientable;
  j["genus"] = m.genus;
  return j;
}

Json to_json(const VerificationReport& r) {
  return Json{{"ok", r.ok()}, {"violations", r.violations}};
}

Json to_json(const TransferConstants& k, const Presentation& kernel) {
  Json j;
  j["C"] = k.c;
  j["C_prime"] = k.c_prime;
  j["C_double_prime"] = k.c_double_prime;
  j["rho"] = k.rho;
  j["M"] = k.m;
  j["k_ball_radius"] = k.k_ball_radius;
  auto certs = [&](const std::vector<Certificate>& v) {
    Json a = Json::array();
    for (const Certificate& c : v)
      a.push_back({{"loop", kernel.format(c.loop)}, {"area", c.area}, {"chain", to_json(c.chain)}});
    return a;
  };
  Json lifts = Json::array();
  for (const LiftCertificates& lc : k.lifts)
    lifts.push_back({{"phi_r", certs(lc.phi_r)},
                     {"psi_r", certs(lc.psi_r)},
                     {"psi_phi_r", certs(lc.psi_phi_r)},
                     {"collar", certs(lc.collar)}});
  j["lifts"] = std::move(lifts);
  return j;
}

Json to_json(const PushdownTrace& t, const HomPresentation& h) {
  Json j;
  Json in = Json::array();
  for (const auto& [e, m] : t.input) in.push_back({e, m});
  j["input"] = std::move(in);
  j["input_chain"] = to_json(t.input_chain);
  j["input_area"] = t.input_chain.l1();
  Json cosets = Json::array();
  for (const Word& w : t.cosets) cosets.push_back(coset_text(w, h));
  j["cosets"] = std::move(cosets);
  j["max_depth"] = t.max_depth;
  Json steps = Json::array();
  for (const PushdownStep& s : t.steps)
    steps.push_back({{"coset", coset_text(s.coset, h)},
                     {"stable_letter", s.stable_letter},
                     {"direction", to_string(s.direction)},
                     {"area_before", s.area_before},
                     {"area_after", s.area_after},
                     {"removed_area", s.removed_area},
                     {"inserted_area", s.inserted_area},
                     {"out_boundary_length", s.out_boundary_length},
                     {"out_boundary_bound", s.out_boundary_bound}});
  j["steps"] = std::move(steps);
  j["final_chain"] = to_json(t.final_chain);
  j["final_k_chain"] = to_json(t.final_k_chain);
  j["final_area"] = t.final_area;
  j["surviving_coset"] = coset_text(t.surviving_coset, h);
  j["M"] = t.m;
  j["f_value"] = t.f_value;
  j["f_source"] = t.f_source;
  return j;
}

Json to_json(const BoundReport& r) {
  auto check = [](const StepCheck& c) {
    return Json{{"index", c.index}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}};
  };
  Json steps = Json::array();
  for (const StepCheck& c : r.steps) steps.push_back(check(c));
  return Json{{"steps", std::move(steps)},
              {"final_check", check(r.final_check)},
              {"theorem_check", check(r.theorem_check)},
              {"pass", r.pass},
              {"f_value", r.f_value},
              {"f_source", r.f_source},
              {"g_value", r.g_value}};
}

Json to_json(const std::vector<TCycle>& cycles) {
  Json a = Json::array();
  for (const TCycle& c : cycles) {
    Json inner = Json::array(), outer = Json::array();
    for (const auto& [e, m] : c.inner_boundary) inner.push_back({e, m});
    for (const auto& [e, m] : c.outer_boundary) outer.push_back({e, m});
    a.push_back({{"stable_letter", c.stable_letter},
                 {"inner_coset", letters(c.inner_coset)},
                 {"outer_coset", letters(c.outer_coset)},
                 {"faces", c.faces},
                 {"inner_boundary", std::move(inner)},
                 {"outer_boundary", std::move(outer)}});
  }
  return a;
}

Json to_json(const ARPairReport& r, const Presentation& p) {
  Json j;
  j["policy"] = to_string(r.policy);
  j["ball_radius"] = r.ball_radius;
  j["f_table"] = r.f_table;
  j["g_table"] = r.g_table;
  j["gaps"] = r.gaps;
  Json wit = Json::array();
  for (const auto& w : r.witnesses)
    wit.push_back(w ? Json{{"word", p.format(w->word)}, {"diagram", to_json(w->diagram)}}
                    : Json(nullptr));
  j["witnesses"] = std::move(wit);
  Json samples = Json::array();
  for (const ARSample& s : r.samples)
    samples.push_back({{"word", p.format(s.word)},
                       {"length", s.length},
                       {"area", s.area},
                       {"radius", s.radius},
                       {"candidates", s.candidates},
                       {"truncated", s.truncated}});
  j["samples"] = std::move(samples);
  return j;
}

Json to_json(const HyperbolicARPair& h) {
  std::vector<bool> exact(h.exact.begin(), h.exact.end());
  return Json{{"B", h.b},       {"C", h.c},
              {"f", h.f},       {"g", h.g},
              {"exact", exact}, {"f_at_least_n", h.f_at_least_n},
              {"rounding", "ceiling; log2 exact at powers of two, ceil(log2 n) elsewhere"}};
}

Json to_json(const DegreeReport& d) {
  return Json{{"M", d.m},
              {"composite", d.composite},
              {"degree", d.degree},
              {"slope", d.slope},
              {"kappa", d.kappa},
              {"symbolic_exponent", d.symbolic_exponent},
              {"symbolic", "1 + 2 C log2(M), times the (log2 n + 1) factor"},
              {"caveat", d.caveat}};
}

Json to_json(const RelationCheck& r) {
  return Json{{"holds", r.holds}, {"constant", r.constant}, {"checked", r.checked},
              {"skipped", r.skipped}};
}

Json to_json(const EquivalenceReport& r, const Presentation& a, const Presentation& b) {
  return Json{{"a", to_json(r.a, a)},
              {"b", to_json(r.b, b)},
              {"f_a_below_b", to_json(r.f_a_below_b)},
              {"f_b_below_a", to_json(r.f_b_below_a)},
              {"g_equiv", to_json(r.g_equiv)},
              {"holds", r.holds},
              {"spot_checks", r.spot_checks},
              {"caveat", "finite-range check; not a proof of the asymptotic relation"}};
}

SurfaceDiagram diagram_from_json(const Json& doc) {
  const Json& j = doc.contains("result") ? doc.at("result") : doc;
  const Json& d = j.contains("diagram") ? j.at("diagram") : j;
  SurfaceDiagram s;
  try {
    bool has_corners = true;
    for (const Json& fj : d.at("faces")) {
      Face f;
      f.labels = fj.at("labels").get<std::vector<Letter>>();
      if (fj.contains("corners")) f.corners = fj.at("corners").get<std::vector<int>>();
      else has_corners = false;
      f.sign = fj.value("sign", 1);
      if (fj.contains("cell") && !fj.at("cell").is_null()) f.cell = fj.at("cell").get<CellId>();
      if (fj.contains("image"))
        for (const Json& im : fj.at("image"))
          f.image.push_back(SlotImage{im.at(0).get<EdgeId>(), im.at(1).get<int>(),
                                      im.at(2).get<VertexId>()});
      s.faces.push_back(std::move(f));
    }
    for (const Json& g : d.at("gluing"))
      s.gluing.emplace_back(SlotRef{g.at(0).at(0).get<int>(), g.at(0).at(1).get<int>()},
                            SlotRef{g.at(1).at(0).get<int>(), g.at(1).at(1).get<int>()});
    if (has_corners && d.contains("vertex_count")) {
      s.vertex_count = d.at("vertex_count").get<int>();
      if (d.contains("vertex_image"))
        for (const Json& v : d.at("vertex_image"))
          s.vertex_image.push_back(v.is_null() ? std::nullopt
                                               : std::optional<VertexId>(v.get<VertexId>()));
      if (d.contains("boundary_paths"))
        for (const Json& path : d.at("boundary_paths")) {
          std::vector<SlotRef> p;
          for (const Json& r : path) p.push_back(SlotRef{r.at(0).get<int>(), r.at(1).get<int>()});
          s.boundary_paths.push_back(std::move(p));
        }
    } else {
      derive_vertices(s);
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed diagram JSON: ") + e.what());
  }
  return s;
}

std::string to_dot(const SurfaceDiagram& s, const Presentation* p) {
  std::set<SlotRef> matched;
  for (const auto& [a, b] : s.gluing) {
    matched.insert(a);
    matched.insert(b);
  }
  std::ostringstream out;
  out << "graph diagram {\n  node [shape=point];\n";
  for (int v = 0; v < s.vertex_count; ++v) out << "  v" << v << ";\n";
  auto label = [&](Letter l) {
    if (p) return p->format(Word{l});
    return std::to_string(l);
  };
  for (std::size_t f = 0; f < s.faces.size(); ++f) {
    const Face& face = s.faces[f];
    for (int k = 0; k < face.size(); ++k) {
      const SlotRef r{static_cast<int>(f), k};
      const bool boundary = !matched.count(r);
      // Each interior edge appears in two slots; draw it from the lesser.
      if (!boundary) {
        bool lesser = true;
        for (const auto& [a, b] : s.gluing)
          if ((a == r && b < r) || (b == r && a < r)) lesser = false;
        if (!lesser) continue;
      }
      const int from = face.corners[static_cast<std::size_t>(k)];
      const int to = face.corners[static_cast<std::size_t>((k + 1) % face.size())];
      out << "  v" << from << " -- v" << to << " [label=\"" << label(face.labels[static_cast<std::size_t>(k)])
          << "\"";
      if (boundary) out << ", color=red, penwidth=2";
      out << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string two_column_table(const std::vector<Coeff>& values, const std::string& header) {
  std::vector<std::string> s;
  for (Coeff v : values) s.push_back(std::to_string(v));
  return two_column_table(s, header);
}

std::string two_column_table(const std::vector<std::string>& values, const std::string& header) {
  std::ostringstream out;
  out << "# n " << header << "\n";
  for (std::size_t n = 1; n < values.size(); ++n) out << n << " " << values[n] << "\n";
  return out.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) throw InputError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot move output into place at '" + path + "'");
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace homfill
