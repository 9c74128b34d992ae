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

#include "homfill/extension.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <set>

#include "homfill/error.hpp"

namespace homfill {

std::string to_string(StepDirection d) {
  return d == StepDirection::kPushForward ? "push_forward" : "pull_back";
}

Word coset_to_h_word(const Group& h, std::span<const Letter> coset) {
  const int kr = h.pres.kernel_rank;
  Word out;
  out.reserve(coset.size());
  for (Letter l : coset) out.push_back(make_letter(kr + generator_of(l), is_inverse(l)));
  return out;
}

namespace {

std::string radius_hint(const CayleyBall& ball, const std::string& what) {
  return what + " leaves the ball of radius " + std::to_string(ball.radius()) +
         "; rerun with a larger radius";
}

const Presentation& kernel_presentation(const Group& h) {
  if (!h.is_extension()) throw InputError("operation needs an extension group");
  return h.kernel_pres->base;
}

Certificate make_certificate(const CayleyBall& k_ball, VertexId base, Word loop,
                             const FillOptions& opts) {
  Certificate cert;
  cert.loop = std::move(loop);
  const OneCycle gamma = loop_to_cycle(k_ball, base, cert.loop);
  const FillingResult r = harea_fill(k_ball, gamma, opts);
  if (r.status != FillStatus::kOptimal)
    throw ResourceError("certificate loop '" + k_ball.presentation().base.format(cert.loop) +
                        "' is " + to_string(r.status) + " in the kernel ball of radius " +
                        std::to_string(k_ball.radius()) + "; rerun with a larger radius");
  cert.chain = r.chain;
  cert.area = r.area;
  return cert;
}

Coeff max_area(const std::vector<Certificate>& v) {
  Coeff m = 0;
  for (const auto& c : v) m = std::max(m, c.area);
  return m;
}

// Coset words in shortlex order.
struct CosetLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return shortlex_less(a, b);
  }
};

}  // namespace

TransferConstants compute_constants(const Group& h, const CayleyBall& k_ball,
                                    const FillOptions& opts) {
  const Presentation& kp = kernel_presentation(h);
  TransferConstants k;
  k.k_ball_radius = k_ball.radius();
  k.rho = h.pres.base.rho();
  const auto& lifts = h.backend.lifts();
  for (const AutLift& lift : lifts) {
    LiftCertificates lc;
    for (const Word& r : kp.relators()) {
      const Word phi = apply_lift(lift, LiftDirection::kForward, r);
      lc.phi_r.push_back(make_certificate(k_ball, k_ball.identity(), phi, opts));
      lc.psi_r.push_back(make_certificate(
          k_ball, k_ball.identity(), apply_lift(lift, LiftDirection::kBackward, r), opts));
      lc.psi_phi_r.push_back(make_certificate(
          k_ball, k_ball.identity(), apply_lift(lift, LiftDirection::kBackward, phi), opts));
    }
    for (int a = 0; a < kp.rank(); ++a) {
      const Word one{make_letter(a)};
      auto base = k_ball.locate(one);
      if (!base) throw ResourceError(radius_hint(k_ball, "generator vertex"));
      Word loop{make_letter(a, true)};
      const Word img = apply_lift(lift, LiftDirection::kBackward,
                                  apply_lift(lift, LiftDirection::kForward, one));
      loop.insert(loop.end(), img.begin(), img.end());
      lc.collar.push_back(make_certificate(k_ball, *base, free_reduce(loop), opts));
    }
    k.c = std::max(k.c, max_area(lc.phi_r));
    k.c_prime = std::max({k.c_prime, max_area(lc.psi_r), max_area(lc.psi_phi_r)});
    k.c_double_prime = std::max(k.c_double_prime, max_area(lc.collar));
    k.lifts.push_back(std::move(lc));
  }
  k.m = std::max<Coeff>({k.c, k.c_prime, k.c_double_prime * (2 * k.rho + 1), 1});
  return k;
}

TwoChain translate_chain(const CayleyBall& ball, std::span<const Letter> g, const TwoChain& c) {
  TwoChain out;
  for (const auto& [cell_id, coeff] : c) {
    const Cell& cell = ball.cell(cell_id);
    auto v = ball.translate(g, cell.base);
    std::optional<CellId> t;
    if (v) t = ball.find_cell(*v, cell.relator);
    if (!t) throw ResourceError(radius_hint(ball, "translated cell"));
    out.add(*t, coeff);
  }
  return out;
}

OneCycle image_cycle(const CayleyBall& k_ball, const AutLift& lift, LiftDirection dir,
                     const OneCycle& gamma) {
  OneCycle out;
  std::vector<Word> letter_image;
  for (int a = 0; a < k_ball.presentation().base.rank(); ++a)
    letter_image.push_back(apply_lift(lift, dir, Word{make_letter(a)}));
  for (const auto& [e, m] : gamma) {
    const Edge& edge = k_ball.edge(e);
    auto start = k_ball.locate(apply_lift(lift, dir, k_ball.vertex(edge.source)));
    if (!start) throw ResourceError(radius_hint(k_ball, "image vertex"));
    out.add(trace_path(k_ball, *start, letter_image[static_cast<std::size_t>(edge.generator)]).chain,
            m);
  }
  return out;
}

TwoChain push_forward_filling(const CayleyBall& k_ball, const TwoChain& c, int lift,
                              const Group& h, const TransferConstants& k) {
  const AutLift& l = h.backend.lifts().at(static_cast<std::size_t>(lift));
  const LiftCertificates& lc = k.lifts.at(static_cast<std::size_t>(lift));
  TwoChain out;
  for (const auto& [cell_id, coeff] : c) {
    const Cell& cell = k_ball.cell(cell_id);
    const Word img = apply_lift(l, LiftDirection::kForward, k_ball.vertex(cell.base));
    out.add(translate_chain(k_ball, img, lc.phi_r[static_cast<std::size_t>(cell.relator)].chain),
            coeff);
  }
  if (out.l1() > k.c * c.l1())
    throw InvariantError("push-forward area exceeds C times the input area");
  if (boundary_2(k_ball, out) !=
      image_cycle(k_ball, l, LiftDirection::kForward, boundary_2(k_ball, c)))
    throw InvariantError("push-forward does not fill the image cycle");
  return out;
}

TwoChain pull_back_filling(const CayleyBall& k_ball, const TwoChain& c_prime,
                           const OneCycle& gamma, int lift, const Group& h,
                           const TransferConstants& k) {
  const AutLift& l = h.backend.lifts().at(static_cast<std::size_t>(lift));
  const LiftCertificates& lc = k.lifts.at(static_cast<std::size_t>(lift));
  if (boundary_2(k_ball, c_prime) != image_cycle(k_ball, l, LiftDirection::kForward, gamma))
    throw InputError("pull-back input does not fill the image of the cycle");
  TwoChain out;
  for (const auto& [cell_id, coeff] : c_prime) {
    const Cell& cell = k_ball.cell(cell_id);
    const Word img = apply_lift(l, LiftDirection::kBackward, k_ball.vertex(cell.base));
    out.add(translate_chain(k_ball, img, lc.psi_r[static_cast<std::size_t>(cell.relator)].chain),
            coeff);
  }
  for (const auto& [e, m] : gamma) {
    const Edge& edge = k_ball.edge(e);
    out.add(translate_chain(k_ball, k_ball.vertex(edge.source),
                            lc.collar[static_cast<std::size_t>(edge.generator)].chain),
            -m);
  }
  if (out.l1() > k.c_prime * c_prime.l1() + k.c_double_prime * gamma.l1())
    throw InvariantError("pull-back area exceeds C' Area + C'' |gamma|");
  if (boundary_2(k_ball, out) != gamma)
    throw InvariantError("pull-back does not fill the cycle");
  return out;
}

std::vector<TCycle> detect_t_cycles(const CayleyBall& h_ball, const SurfaceDiagram& s) {
  const HomPresentation& hp = h_ball.presentation();
  if (!hp.is_extension() || h_ball.backend().kind() != BackendKind::kExtension)
    throw InputError("t-cycle detection needs a ball of an extension group");
  const int kr = hp.kernel_rank;
  const int krc = hp.kernel_relator_count;
  for (const auto& [e, m] : project_boundary(s))
    if (h_ball.edge(e).generator >= kr)
      throw InputError("diagram boundary contains a stable-letter edge");

  using Key = std::tuple<int, Word, Word>;
  auto key_less = [](const Key& a, const Key& b) {
    CosetLess cl;
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return cl(std::get<1>(a), std::get<1>(b));
    return cl(std::get<2>(a), std::get<2>(b));
  };
  std::map<Key, TCycle, decltype(key_less)> groups(key_less);
  for (std::size_t f = 0; f < s.faces.size(); ++f) {
    const Face& face = s.faces[f];
    if (!face.cell) throw InputError("t-cycle detection needs face provenance");
    const Cell& cell = h_ball.cell(*face.cell);
    if (cell.relator < krc) continue;
    const int letter = (cell.relator - krc) / kr;
    const Word& here = h_ball.coset_label(cell.base);
    const Word& there = h_ball.coset_label(cell.walk.front().to);
    const bool here_inner = here.size() < there.size();
    const Word& inner = here_inner ? here : there;
    const Word& outer = here_inner ? there : here;
    auto [it, fresh] = groups.try_emplace(Key{letter, inner, outer});
    TCycle& tc = it->second;
    if (fresh) {
      tc.stable_letter = letter;
      tc.inner_coset = inner;
      tc.outer_coset = outer;
    }
    tc.faces.push_back(static_cast<int>(f));
    for (const SlotImage& im : face.image) {
      const Edge& edge = h_ball.edge(im.edge);
      if (edge.generator >= kr) continue;
      const Word& cs = h_ball.coset_label(edge.source);
      if (cs == inner) tc.inner_boundary.add(im.edge, im.sign);
      else if (cs == outer) tc.outer_boundary.add(im.edge, im.sign);
      else throw InvariantError("conjugation face touches a third coset");
    }
  }
  std::vector<TCycle> out;
  for (auto& [key, tc] : groups) {
    if (!is_cycle(h_ball, tc.inner_boundary) || !is_cycle(h_ball, tc.outer_boundary))
      throw InvariantError("t-cycle boundary does not close");
    out.push_back(std::move(tc));
  }
  return out;
}

Coeff instance_f_value(const std::vector<Coeff>& table, const OneCycle& gamma,
                       const TwoChain& c) {
  const Coeff n = gamma.l1();
  Coeff v = std::max(c.l1(), n);
  if (static_cast<std::size_t>(n) < table.size()) v = std::max(v, table[static_cast<std::size_t>(n)]);
  return v;
}

namespace {

// Coset words touched by a cell: one for K-relator cells, two for
// conjugation cells.
std::vector<Word> cell_cosets(const CayleyBall& h_ball, CellId id) {
  const Cell& cell = h_ball.cell(id);
  std::vector<Word> out{h_ball.coset_label(cell.base)};
  if (cell.relator >= h_ball.presentation().kernel_relator_count)
    out.push_back(h_ball.coset_label(cell.walk.front().to));
  return out;
}

std::set<Word, CosetLess> chain_cosets(const CayleyBall& h_ball, const TwoChain& c) {
  std::set<Word, CosetLess> out;
  for (const auto& [id, m] : c)
    for (Word& w : cell_cosets(h_ball, id)) out.insert(std::move(w));
  return out;
}

}  // namespace

PushdownTrace push_down(const CayleyBall& h_ball, const CayleyBall& k_ball, const Group& h,
                        const OneCycle& gamma, const TwoChain& c,
                        const TransferConstants& k, Coeff f_value,
                        const std::string& f_source) {
  const int kr = h.pres.kernel_rank;
  const int krc = h.pres.kernel_relator_count;
  if (!h.is_extension()) throw InputError("push-down needs an extension group");
  if (boundary_2(h_ball, c) != gamma) throw InputError("chain does not fill the cycle");
  for (const auto& [e, m] : gamma) {
    const Edge& edge = h_ball.edge(e);
    if (edge.generator >= kr || !h_ball.coset_label(edge.source).empty())
      throw InputError("push-down cycle must lie in the kernel coset");
  }
  Router router(h, h_ball, k_ball, k);

  PushdownTrace trace;
  trace.input = gamma;
  trace.input_chain = c;
  trace.m = k.m;
  trace.f_value = f_value;
  trace.f_source = f_source;
  for (const Word& w : chain_cosets(h_ball, c)) {
    trace.cosets.push_back(w);
    trace.max_depth = std::max(trace.max_depth, static_cast<int>(w.size()));
  }

  TwoChain cur = c;
  for (;;) {
    const auto cosets = chain_cosets(h_ball, cur);
    if (cosets.empty() || cosets.rbegin()->empty()) break;
    // Shortlex order puts the longest words last; take the least of those.
    const std::size_t len = cosets.rbegin()->size();
    const Word w = *std::find_if(cosets.begin(), cosets.end(),
                                 [&](const Word& x) { return x.size() == len; });
    const Letter last = w.back();
    const int lift = generator_of(last);
    const Word parent(w.begin(), w.end() - 1);

    TwoChain s_out, t_cells;
    for (const auto& [id, m] : cur) {
      const Cell& cell = h_ball.cell(id);
      const auto cs = cell_cosets(h_ball, id);
      if (cell.relator < krc) {
        if (cs.front() == w) s_out.add(id, m);
        continue;
      }
      if (cs[0] != w && cs[1] != w) continue;
      if ((cell.relator - krc) / kr != lift || (cs[0] != parent && cs[1] != parent))
        throw InvariantError("conjugation cell leaves the maximal coset outward");
      t_cells.add(id, m);
    }
    const TwoChain removed = s_out + t_cells;
    const OneCycle bd = boundary_2(h_ball, removed);
    for (const auto& [e, m] : bd) {
      const Edge& edge = h_ball.edge(e);
      if (edge.generator >= kr || h_ball.coset_label(edge.source) != parent)
        throw InvariantError("removed piece has boundary outside the parent coset");
    }
    const OneCycle gamma_in = router.to_kernel(parent, bd);
    const TwoChain s_out_k = router.to_kernel(w, s_out);
    const AutLift& l = h.backend.lifts().at(static_cast<std::size_t>(lift));

    PushdownStep step;
    step.coset = w;
    step.stable_letter = lift;
    TwoChain s_in;
    if (!is_inverse(last)) {
      if (boundary_2(k_ball, s_out_k) != image_cycle(k_ball, l, LiftDirection::kForward, gamma_in))
        throw InvariantError("outer filling does not fill the image of the inner boundary");
      s_in = pull_back_filling(k_ball, s_out_k, gamma_in, lift, h, k);
      step.direction = StepDirection::kPullBack;
    } else {
      if (gamma_in != image_cycle(k_ball, l, LiftDirection::kForward, boundary_2(k_ball, s_out_k)))
        throw InvariantError("inner boundary is not the image of the outer boundary");
      s_in = push_forward_filling(k_ball, s_out_k, lift, h, k);
      step.direction = StepDirection::kPushForward;
    }
    TwoChain next = cur - removed + router.embed(parent, s_in);
    if (boundary_2(h_ball, next) != gamma)
      throw InvariantError("push-down step changed the boundary");

    step.area_before = cur.l1();
    step.area_after = next.l1();
    step.removed_area = removed.l1();
    step.inserted_area = s_in.l1();
    step.out_boundary_length = boundary_2(k_ball, s_out_k).l1();
    step.out_boundary_bound = gamma.l1() + 2 * k.rho * step.area_before;
    if (step.area_after > k.m * step.area_before + k.m * f_value)
      throw InvariantError("push-down step violates Area_after <= M Area_before + M f");
    trace.steps.push_back(std::move(step));
    cur = std::move(next);
  }
  const auto left = chain_cosets(h_ball, cur);
  if (left.size() > 1) throw InvariantError("push-down left more than one coset");
  trace.surviving_coset = left.empty() ? Word{} : *left.begin();
  trace.final_chain = cur;
  trace.final_k_chain = router.to_kernel(Word{}, cur);
  trace.final_area = cur.l1();
  return trace;
}

BoundReport verify_theorem_bound(const PushdownTrace& trace, int g_value) {
  if (g_value < trace.max_depth)
    throw InputError("g value " + std::to_string(g_value) + " is below the coset depth " +
                     std::to_string(trace.max_depth));
  BoundReport rep;
  rep.f_value = trace.f_value;
  rep.f_source = trace.f_source;
  rep.g_value = g_value;
  const mpz_class m(static_cast<long>(trace.m));
  const mpz_class f(static_cast<long>(trace.f_value));
  bool all = true;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    const mpz_class lhs(static_cast<long>(s.area_after));
    const mpz_class rhs = m * mpz_class(static_cast<long>(s.area_before)) + m * f;
    StepCheck sc{i, lhs.get_str(), rhs.get_str(), lhs <= rhs};
    all = all && sc.pass;
    rep.steps.push_back(std::move(sc));
  }
  const mpz_class final_area(static_cast<long>(trace.final_area));
  mpz_class pow_k;
  mpz_pow_ui(pow_k.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(trace.max_depth + 1));
  const mpz_class final_rhs = pow_k * f;
  rep.final_check = {trace.steps.size(), final_area.get_str(), final_rhs.get_str(),
                     final_area <= final_rhs};
  mpz_class pow_g;
  const mpz_class m2 = m * m;
  mpz_pow_ui(pow_g.get_mpz_t(), m2.get_mpz_t(), static_cast<unsigned long>(g_value));
  const mpz_class theorem_rhs = pow_g * f;
  rep.theorem_check = {trace.steps.size(), final_area.get_str(), theorem_rhs.get_str(),
                       final_area <= theorem_rhs};
  rep.pass = all && rep.final_check.pass && rep.theorem_check.pass;
  return rep;
}

Router::Router(const Group& h, const CayleyBall& h_ball, const CayleyBall& k_ball,
               const TransferConstants& k, FillOptions opts)
    : h_(h), h_ball_(h_ball), k_ball_(k_ball), k_(k), opts_(opts) {
  kernel_presentation(h);
}

Word Router::h_word(std::span<const Letter> coset) const { return coset_to_h_word(h_, coset); }

TwoChain Router::embed(std::span<const Letter> coset, const TwoChain& k_chain) const {
  const Word prefix = h_word(coset);
  TwoChain out;
  for (const auto& [id, m] : k_chain) {
    const Cell& cell = k_ball_.cell(id);
    auto v = h_ball_.locate(concat(prefix, k_ball_.vertex(cell.base)));
    std::optional<CellId> t;
    if (v) t = h_ball_.find_cell(*v, cell.relator);
    if (!t) throw ResourceError(radius_hint(h_ball_, "embedded kernel cell"));
    out.add(*t, m);
  }
  return out;
}

OneCycle Router::embed(std::span<const Letter> coset, const OneCycle& k_cycle) const {
  const Word prefix = h_word(coset);
  OneCycle out;
  for (const auto& [e, m] : k_cycle) {
    const Edge& edge = k_ball_.edge(e);
    auto v = h_ball_.locate(concat(prefix, k_ball_.vertex(edge.source)));
    std::optional<EdgeId> t;
    if (v) t = h_ball_.find_edge(*v, edge.generator);
    if (!t) throw ResourceError(radius_hint(h_ball_, "embedded kernel edge"));
    out.add(*t, m);
  }
  return out;
}

TwoChain Router::to_kernel(std::span<const Letter> coset, const TwoChain& h_chain) const {
  const Word back = inverse_word(h_word(coset));
  const Word want(coset.begin(), coset.end());
  TwoChain out;
  for (const auto& [id, m] : h_chain) {
    const Cell& cell = h_ball_.cell(id);
    if (cell.relator >= h_.pres.kernel_relator_count || h_ball_.coset_label(cell.base) != want)
      throw InvariantError("chain has cells outside the requested kernel coset");
    const Word y = h_ball_.backend().split(concat(back, h_ball_.vertex(cell.base))).k_part;
    auto v = k_ball_.find_vertex(y);
    std::optional<CellId> t;
    if (v) t = k_ball_.find_cell(*v, cell.relator);
    if (!t) throw ResourceError(radius_hint(k_ball_, "kernel cell"));
    out.add(*t, m);
  }
  return out;
}

OneCycle Router::to_kernel(std::span<const Letter> coset, const OneCycle& h_cycle) const {
  const Word back = inverse_word(h_word(coset));
  const Word want(coset.begin(), coset.end());
  OneCycle out;
  for (const auto& [e, m] : h_cycle) {
    const Edge& edge = h_ball_.edge(e);
    if (edge.generator >= h_.pres.kernel_rank || h_ball_.coset_label(edge.source) != want)
      throw InvariantError("cycle has edges outside the requested kernel coset");
    const Word y = h_ball_.backend().split(concat(back, h_ball_.vertex(edge.source))).k_part;
    auto v = k_ball_.find_vertex(y);
    std::optional<EdgeId> t;
    if (v) t = k_ball_.find_edge(*v, edge.generator);
    if (!t) throw ResourceError(radius_hint(k_ball_, "kernel edge"));
    out.add(*t, m);
  }
  return out;
}

CellId Router::conj_cell(const Word& base_h_word, int lift, int generator) const {
  const int rel = h_.pres.kernel_relator_count + lift * h_.pres.kernel_rank + generator;
  auto v = h_ball_.locate(base_h_word);
  std::optional<CellId> t;
  if (v) t = h_ball_.find_cell(*v, rel);
  if (!t) throw ResourceError(radius_hint(h_ball_, "conjugation cell"));
  return *t;
}

TwoChain Router::route_from(const Word& coset, const OneCycle& eta, const TwoChain& c_eta,
                            std::span<const Letter> rest) const {
  if (rest.empty()) return embed(coset, c_eta);
  const Letter s = rest.front();
  if (!coset.empty() && coset.back() == -s) throw InputError("route word is not reduced");
  const int lift = generator_of(s);
  if (lift < 0 || static_cast<std::size_t>(lift) >= h_.backend.lifts().size())
    throw InputError("route word names an unknown stable letter");
  const AutLift& l = h_.backend.lifts()[static_cast<std::size_t>(lift)];
  Word next = coset;
  next.push_back(s);
  const Word prefix = h_word(coset);
  const Letter t = make_letter(h_.pres.kernel_rank + lift);

  if (!is_inverse(s)) {
    // Prism over eta: conjugation cells at y t for each edge (y, a).
    TwoChain prism;
    for (const auto& [e, m] : eta) {
      const Edge& edge = k_ball_.edge(e);
      Word base = concat(prefix, k_ball_.vertex(edge.source));
      base.push_back(t);
      prism.add(conj_cell(base, lift, edge.generator), m);
    }
    const OneCycle up = image_cycle(k_ball_, l, LiftDirection::kForward, eta);
    const TwoChain c_up = push_forward_filling(k_ball_, c_eta, lift, h_, k_);
    return prism + route_from(next, up, c_up, rest.subspan(1));
  }

  const OneCycle delta = image_cycle(k_ball_, l, LiftDirection::kBackward, eta);
  const FillingResult fd = harea_fill(k_ball_, delta, opts_);
  if (fd.status != FillStatus::kOptimal)
    throw ResourceError(radius_hint(k_ball_, "filling of the pulled-back cycle"));
  TwoChain prism;
  for (const auto& [e, m] : delta) {
    const Edge& edge = k_ball_.edge(e);
    const Word base =
        concat(prefix, apply_lift(l, LiftDirection::kForward, k_ball_.vertex(edge.source)));
    prism.add(conj_cell(base, lift, edge.generator), m);
  }
  const OneCycle rem = eta - image_cycle(k_ball_, l, LiftDirection::kForward, delta);
  const FillingResult fr = harea_fill(k_ball_, rem, opts_);
  if (fr.status != FillStatus::kOptimal)
    throw ResourceError(radius_hint(k_ball_, "filling of the collar difference"));
  return route_from(next, delta, fd.chain, rest.subspan(1)) - prism + embed(coset, fr.chain);
}

Router::Result Router::route(std::span<const Letter> k_word,
                             std::span<const Letter> route_word) const {
  Result r;
  r.k_gamma = loop_to_cycle(k_ball_, k_ball_.identity(), k_word);
  const FillingResult f = harea_fill(k_ball_, r.k_gamma, opts_);
  if (f.status != FillStatus::kOptimal)
    throw ResourceError(radius_hint(k_ball_, "kernel filling of the loop"));
  r.chain = route_from(Word{}, r.k_gamma, f.chain, route_word);
  r.gamma = embed(Word{}, r.k_gamma);
  if (boundary_2(h_ball_, r.chain) != r.gamma)
    throw InvariantError("routed chain does not fill the loop");
  return r;
}

}  // namespace homfill
