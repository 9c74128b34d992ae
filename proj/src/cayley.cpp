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

#include "homfill/cayley.hpp"

#include "homfill/error.hpp"

namespace homfill {

namespace {

int letter_slot(Letter l) { return 2 * generator_of(l) + (l < 0 ? 1 : 0); }

}  // namespace

CayleyBall CayleyBall::build(const GroupBackend& backend, const HomPresentation& pres,
                             int radius, std::size_t vertex_budget) {
  if (radius < 1) throw InputError("ball radius must be at least 1");
  const Presentation& p = pres.base;
  CayleyBall ball;
  ball.backend_ = backend;
  ball.pres_ = pres;
  ball.radius_ = radius;
  ball.vertices_ = enumerate_ball_vertices(backend, p, radius, vertex_budget);
  const auto nv = ball.vertices_.size();
  for (std::size_t i = 0; i < nv; ++i)
    ball.vertex_index_.emplace(ball.vertices_[i], static_cast<VertexId>(i));

  const int rank = p.rank();
  const auto slots = static_cast<std::size_t>(2 * rank);
  ball.steps_.assign(nv * slots, -1);
  ball.step_targets_.assign(nv * slots, -1);
  ball.depth_.assign(nv, -1);
  ball.depth_[0] = 0;

  // Positive edges first, in (source, generator) order.
  for (std::size_t v = 0; v < nv; ++v) {
    for (int g = 0; g < rank; ++g) {
      Word w = ball.vertices_[v];
      w.push_back(make_letter(g));
      auto t = ball.find_vertex(backend.normal_form(w));
      if (!t) continue;
      const auto id = static_cast<EdgeId>(ball.edges_.size());
      ball.edges_.push_back({static_cast<VertexId>(v), g, *t});
      ball.steps_[v * slots + static_cast<std::size_t>(2 * g)] = id;
      ball.step_targets_[v * slots + static_cast<std::size_t>(2 * g)] = *t;
      ball.steps_[static_cast<std::size_t>(*t) * slots + static_cast<std::size_t>(2 * g + 1)] = id;
      ball.step_targets_[static_cast<std::size_t>(*t) * slots + static_cast<std::size_t>(2 * g + 1)] =
          static_cast<VertexId>(v);
    }
  }
  // BFS order makes depth a single pass.
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t s = 0; s < slots; ++s) {
      VertexId t = ball.step_targets_[v * slots + s];
      if (t >= 0 && ball.depth_[static_cast<std::size_t>(t)] < 0)
        ball.depth_[static_cast<std::size_t>(t)] = ball.depth_[v] + 1;
    }

  const auto nr = p.relators().size();
  ball.cell_index_.assign(nv * nr, -1);
  ball.edge_cells_.assign(ball.edges_.size(), {});
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t r = 0; r < nr; ++r) {
      Cell cell{static_cast<VertexId>(v), static_cast<int>(r), {}, {}};
      VertexId cur = static_cast<VertexId>(v);
      bool inside = true;
      for (Letter l : p.relators()[r]) {
        auto s = ball.step(cur, l);
        if (!s) {
          inside = false;
          break;
        }
        cell.walk.push_back(*s);
        cell.boundary.add(s->edge, s->sign);
        cur = s->to;
      }
      if (!inside) continue;
      if (cur != static_cast<VertexId>(v))
        throw InvariantError("relator loop does not close in the backend");
      const auto id = static_cast<CellId>(ball.cells_.size());
      ball.cell_index_[v * nr + r] = id;
      for (const auto& [e, c] : cell.boundary)
        ball.edge_cells_[static_cast<std::size_t>(e)].push_back(id);
      ball.cells_.push_back(std::move(cell));
    }
  }

  ball.coset_labels_.resize(nv);
  if (backend.kind() == BackendKind::kExtension)
    for (std::size_t v = 0; v < nv; ++v)
      ball.coset_labels_[v] = backend.coset_of(ball.vertices_[v]);
  return ball;
}

std::optional<VertexId> CayleyBall::find_vertex(std::span<const Letter> nf) const {
  auto it = vertex_index_.find(Word(nf.begin(), nf.end()));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<VertexId> CayleyBall::locate(std::span<const Letter> w) const {
  return find_vertex(backend_.normal_form(w));
}

std::optional<EdgeId> CayleyBall::find_edge(VertexId source, int generator) const {
  auto s = step(source, make_letter(generator));
  if (!s) return std::nullopt;
  return s->edge;
}

std::optional<CellId> CayleyBall::find_cell(VertexId base, int relator) const {
  const auto nr = pres_.base.relators().size();
  if (base < 0 || static_cast<std::size_t>(base) >= vertices_.size() || relator < 0 ||
      static_cast<std::size_t>(relator) >= nr)
    return std::nullopt;
  CellId id = cell_index_[static_cast<std::size_t>(base) * nr + static_cast<std::size_t>(relator)];
  if (id < 0) return std::nullopt;
  return id;
}

std::optional<EdgeStep> CayleyBall::step(VertexId v, Letter letter) const {
  const auto slots = static_cast<std::size_t>(2 * pres_.base.rank());
  if (letter == 0 || generator_of(letter) >= pres_.base.rank())
    throw InputError("letter outside the ball's alphabet");
  const std::size_t k = static_cast<std::size_t>(v) * slots + static_cast<std::size_t>(letter_slot(letter));
  EdgeId e = steps_[k];
  if (e < 0) return std::nullopt;
  return EdgeStep{e, letter > 0 ? 1 : -1, v, step_targets_[k]};
}

std::optional<VertexId> CayleyBall::translate(std::span<const Letter> g, VertexId v) const {
  return locate(concat(g, vertex(v)));
}

OneCycle boundary_2(const CayleyBall& ball, const TwoChain& c) {
  OneCycle out;
  for (const auto& [cell, coeff] : c) {
    if (cell < 0 || static_cast<std::size_t>(cell) >= ball.cell_count())
      throw InputError("cell index out of range");
    out.add(ball.cell(cell).boundary, coeff);
  }
  return out;
}

Coeff cycle_length(const OneCycle& gamma) { return gamma.l1(); }

std::map<VertexId, Coeff> vertex_boundary(const CayleyBall& ball, const OneCycle& chain) {
  std::map<VertexId, Coeff> out;
  for (const auto& [e, c] : chain) {
    const Edge& edge = ball.edge(e);
    out[edge.target] += c;
    out[edge.source] -= c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

bool is_cycle(const CayleyBall& ball, const OneCycle& chain) {
  for (const auto& [e, c] : chain)
    if (e < 0 || static_cast<std::size_t>(e) >= ball.edge_count()) return false;
  return vertex_boundary(ball, chain).empty();
}

TracedPath trace_path(const CayleyBall& ball, VertexId base, std::span<const Letter> w) {
  TracedPath out{{}, base};
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto s = ball.step(out.end, w[i]);
    if (!s)
      throw ResourceError("path leaves the ball of radius " + std::to_string(ball.radius()) +
                          " after prefix '" +
                          ball.presentation().base.format(w.subspan(0, i + 1)) + "'");
    out.chain.add(s->edge, s->sign);
    out.end = s->to;
  }
  return out;
}

OneCycle loop_to_cycle(const CayleyBall& ball, VertexId base, std::span<const Letter> w) {
  // Closure is a group question; check it before walking so a non-closing
  // word is reported as such even when it would also leave the ball.
  const Word& b = ball.vertex(base);
  if (!ball.backend().equal_in_group(concat(b, w), b))
    throw InputError("word '" + ball.presentation().base.format(w) + "' does not close");
  TracedPath p = trace_path(ball, base, w);
  if (p.end != base) throw InvariantError("closed word traced to a different vertex");
  return p.chain;
}

}  // namespace homfill
