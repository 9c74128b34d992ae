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

#ifndef HOMFILL_CAYLEY_HPP_
#define HOMFILL_CAYLEY_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "homfill/backend.hpp"
#include "homfill/presentation.hpp"
#include "homfill/word.hpp"

namespace homfill {

using VertexId = int;
using EdgeId = int;
using CellId = int;
using Coeff = std::int64_t;

/// Sparse integer chain; zero coefficients are never stored. Iteration is
/// in index order, so anything derived from a chain is deterministic.
template <class Tag>
class Chain {
 public:
  using Map = std::map<int, Coeff>;

  Chain() = default;
  Chain(std::initializer_list<std::pair<const int, Coeff>> init) {
    for (const auto& [i, c] : init) add(i, c);
  }

  void add(int index, Coeff c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(index, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }
  void add(const Chain& other, Coeff scale = 1) {
    for (const auto& [i, c] : other.coeffs_) add(i, scale * c);
  }
  Coeff get(int index) const {
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? 0 : it->second;
  }
  Coeff l1() const {
    Coeff s = 0;
    for (const auto& [i, c] : coeffs_) s += c < 0 ? -c : c;
    return s;
  }
  Coeff max_abs() const {
    Coeff m = 0;
    for (const auto& [i, c] : coeffs_) m = std::max(m, c < 0 ? -c : c);
    return m;
  }
  Chain scaled(Coeff k) const {
    Chain out;
    for (const auto& [i, c] : coeffs_) out.add(i, k * c);
    return out;
  }
  bool empty() const { return coeffs_.empty(); }
  std::size_t support_size() const { return coeffs_.size(); }
  const Map& terms() const { return coeffs_; }
  auto begin() const { return coeffs_.begin(); }
  auto end() const { return coeffs_.end(); }

  friend bool operator==(const Chain&, const Chain&) = default;
  friend Chain operator+(Chain a, const Chain& b) {
    a.add(b);
    return a;
  }
  friend Chain operator-(Chain a, const Chain& b) {
    a.add(b, -1);
    return a;
  }

 private:
  Map coeffs_;
};

struct EdgeTag {};
struct CellTag {};
using OneCycle = Chain<EdgeTag>;  // also used for open 1-chains (paths)
using TwoChain = Chain<CellTag>;

/// Edge from `source` to source * generator, stored once in the positive
/// generator direction.
struct Edge {
  VertexId source;
  int generator;
  VertexId target;
};

/// One letter of a traversed path: the edge and +1/-1 for forward/backward.
struct EdgeStep {
  EdgeId edge;
  int sign;
  VertexId from;
  VertexId to;
};

/// The 2-cell D_r^x: relator r read from base x.
struct Cell {
  VertexId base;
  int relator;
  std::vector<EdgeStep> walk;  // one step per relator letter
  OneCycle boundary;           // aggregated signed walk
};

/// Finite piece of the homological Cayley complex: every vertex within the
/// radius, every edge with both endpoints inside, every cell whose whole
/// boundary loop lies inside. Immutable after build.
class CayleyBall {
 public:
  /// Vertices in BFS discovery order, edges sorted by (source, generator),
  /// cells by (base, relator). Throws ResourceError past `vertex_budget`.
  static CayleyBall build(const GroupBackend& backend, const HomPresentation& pres,
                          int radius,
                          std::size_t vertex_budget = kDefaultVertexBudget);

  int radius() const { return radius_; }
  const GroupBackend& backend() const { return backend_; }
  const HomPresentation& presentation() const { return pres_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t cell_count() const { return cells_.size(); }
  const std::vector<Word>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const Word& vertex(VertexId v) const { return vertices_[static_cast<std::size_t>(v)]; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  const Cell& cell(CellId c) const { return cells_[static_cast<std::size_t>(c)]; }
  /// Reduced t-word of the vertex's K-coset (empty unless extension).
  const Word& coset_label(VertexId v) const {
    return coset_labels_[static_cast<std::size_t>(v)];
  }
  /// Word distance from the identity.
  int depth(VertexId v) const { return depth_[static_cast<std::size_t>(v)]; }

  VertexId identity() const { return 0; }
  std::optional<VertexId> find_vertex(std::span<const Letter> normal_form) const;
  /// Normal-forms `w` first.
  std::optional<VertexId> locate(std::span<const Letter> w) const;
  std::optional<EdgeId> find_edge(VertexId source, int generator) const;
  std::optional<CellId> find_cell(VertexId base, int relator) const;
  /// Following `letter` from v; nullopt when the edge leaves the ball.
  std::optional<EdgeStep> step(VertexId v, Letter letter) const;
  /// Vertex g * v, if inside the ball.
  std::optional<VertexId> translate(std::span<const Letter> g, VertexId v) const;

  /// Incidence lists: cells whose boundary touches each edge (ascending).
  const std::vector<CellId>& cells_on_edge(EdgeId e) const {
    return edge_cells_[static_cast<std::size_t>(e)];
  }

 private:
  GroupBackend backend_;
  HomPresentation pres_;
  int radius_ = 0;
  std::vector<Word> vertices_;
  std::vector<int> depth_;
  std::unordered_map<Word, VertexId, WordHash> vertex_index_;
  std::vector<Edge> edges_;
  std::vector<Cell> cells_;
  std::vector<Word> coset_labels_;
  // steps_[v * 2 * rank + slot]: edge id (-1 if outside) for letter slot.
  std::vector<EdgeId> steps_;
  std::vector<VertexId> step_targets_;
  std::vector<CellId> cell_index_;  // base * relators + relator, -1 if absent
  std::vector<std::vector<CellId>> edge_cells_;
};

OneCycle boundary_2(const CayleyBall& ball, const TwoChain& c);

/// |gamma| = sum of absolute coefficients.
Coeff cycle_length(const OneCycle& gamma);

/// Vertex boundary of a 1-chain (target minus source per unit).
std::map<VertexId, Coeff> vertex_boundary(const CayleyBall& ball, const OneCycle& chain);
bool is_cycle(const CayleyBall& ball, const OneCycle& chain);

struct TracedPath {
  OneCycle chain;
  VertexId end;
};

/// Traces w from `base`. Throws ResourceError naming the first prefix that
/// leaves the ball.
TracedPath trace_path(const CayleyBall& ball, VertexId base, std::span<const Letter> w);

/// Traces a closed word. Throws InputError if it does not close up and
/// ResourceError if it leaves the ball.
OneCycle loop_to_cycle(const CayleyBall& ball, VertexId base, std::span<const Letter> w);

}  // namespace homfill

#endif  // HOMFILL_CAYLEY_HPP_
