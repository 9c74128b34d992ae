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

#include "homfill/surface.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "homfill/error.hpp"

namespace homfill {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

// Slot -> partner, or nullopt. Throws when a slot is glued twice.
std::map<SlotRef, SlotRef> partner_map(const SurfaceDiagram& s) {
  std::map<SlotRef, SlotRef> out;
  for (const auto& [a, b] : s.gluing) {
    if (!out.emplace(a, b).second || !out.emplace(b, a).second)
      throw InputError("slot matched twice");
  }
  return out;
}

int next_slot(const Face& f, int k) { return (k + 1) % f.size(); }

std::vector<int> corner_offsets(const SurfaceDiagram& s) {
  std::vector<int> off(s.faces.size() + 1, 0);
  for (std::size_t f = 0; f < s.faces.size(); ++f) off[f + 1] = off[f] + s.faces[f].size();
  return off;
}

// Next unmatched slot along the boundary after `slot`, walking around the
// end corner of `slot`.
SlotRef boundary_successor(const SurfaceDiagram& s, const std::map<SlotRef, SlotRef>& partner,
                           SlotRef slot) {
  SlotRef cur{slot.face, next_slot(s.faces[static_cast<std::size_t>(slot.face)], slot.slot)};
  const std::size_t guard = 2 * partner.size() + 2;
  for (std::size_t i = 0; i <= guard; ++i) {
    auto it = partner.find(cur);
    if (it == partner.end()) return cur;
    const SlotRef p = it->second;
    cur = {p.face, next_slot(s.faces[static_cast<std::size_t>(p.face)], p.slot)};
  }
  throw InvariantError("boundary walk does not terminate");
}

std::vector<std::vector<SlotRef>> trace_boundary(const SurfaceDiagram& s,
                                                 const std::map<SlotRef, SlotRef>& partner) {
  std::vector<std::vector<SlotRef>> paths;
  std::set<SlotRef> used;
  for (std::size_t f = 0; f < s.faces.size(); ++f)
    for (int k = 0; k < s.faces[f].size(); ++k) {
      SlotRef start{static_cast<int>(f), k};
      if (partner.count(start) || used.count(start)) continue;
      std::vector<SlotRef> path;
      SlotRef cur = start;
      do {
        if (!used.insert(cur).second) throw InvariantError("boundary paths overlap");
        path.push_back(cur);
        cur = boundary_successor(s, partner, cur);
      } while (cur != start);
      paths.push_back(std::move(path));
    }
  return paths;
}

}  // namespace

void derive_vertices(SurfaceDiagram& s) {
  const auto partner = partner_map(s);
  const auto off = corner_offsets(s);
  UnionFind uf(static_cast<std::size_t>(off.back()));
  for (const auto& [a, b] : s.gluing) {
    const Face& fa = s.faces[static_cast<std::size_t>(a.face)];
    const Face& fb = s.faces[static_cast<std::size_t>(b.face)];
    uf.unite(off[a.face] + a.slot, off[b.face] + next_slot(fb, b.slot));
    uf.unite(off[a.face] + next_slot(fa, a.slot), off[b.face] + b.slot);
  }
  std::map<int, int> id_of_root;
  s.vertex_count = 0;
  for (std::size_t f = 0; f < s.faces.size(); ++f) {
    Face& face = s.faces[f];
    face.corners.assign(static_cast<std::size_t>(face.size()), 0);
    for (int k = 0; k < face.size(); ++k) {
      const int root = uf.find(off[f] + k);
      auto [it, fresh] = id_of_root.emplace(root, s.vertex_count);
      if (fresh) ++s.vertex_count;
      face.corners[static_cast<std::size_t>(k)] = it->second;
    }
  }
  s.vertex_image.assign(static_cast<std::size_t>(s.vertex_count), std::nullopt);
  for (const Face& face : s.faces) {
    if (face.image.empty()) continue;
    for (int k = 0; k < face.size(); ++k) {
      auto& img = s.vertex_image[static_cast<std::size_t>(face.corners[static_cast<std::size_t>(k)])];
      const VertexId v = face.image[static_cast<std::size_t>(k)].from;
      if (img && *img != v) throw InvariantError("glued corners have different images");
      img = v;
    }
  }
  s.boundary_paths = trace_boundary(s, partner);
}

SurfaceDiagram assemble_surface(const CayleyBall& ball, const TwoChain& c) {
  if (c.empty()) throw InputError("cannot assemble a surface from the zero chain");
  SurfaceDiagram s;
  for (const auto& [cell_id, coeff] : c) {
    if (cell_id < 0 || static_cast<std::size_t>(cell_id) >= ball.cell_count())
      throw InputError("cell index out of range");
    const Cell& cell = ball.cell(cell_id);
    const Word& rel = ball.presentation().base.relators()[static_cast<std::size_t>(cell.relator)];
    const int len = static_cast<int>(rel.size());
    const int sign = coeff > 0 ? 1 : -1;
    Face face;
    face.cell = cell_id;
    face.sign = sign;
    for (int k = 0; k < len; ++k) {
      if (sign > 0) {
        const EdgeStep& st = cell.walk[static_cast<std::size_t>(k)];
        face.labels.push_back(rel[static_cast<std::size_t>(k)]);
        face.image.push_back({st.edge, st.sign, st.from});
      } else {
        const EdgeStep& st = cell.walk[static_cast<std::size_t>(len - 1 - k)];
        face.labels.push_back(-rel[static_cast<std::size_t>(len - 1 - k)]);
        face.image.push_back({st.edge, -st.sign, st.to});
      }
    }
    for (Coeff i = 0; i < (coeff < 0 ? -coeff : coeff); ++i) s.faces.push_back(face);
  }

  // Open slots per (edge, sign), ordered by (face, slot).
  std::map<std::pair<EdgeId, int>, std::set<SlotRef>> open;
  for (std::size_t f = 0; f < s.faces.size(); ++f)
    for (int k = 0; k < s.faces[f].size(); ++k) {
      const SlotImage& im = s.faces[f].image[static_cast<std::size_t>(k)];
      open[{im.edge, im.sign}].insert({static_cast<int>(f), k});
    }
  std::vector<bool> placed(s.faces.size(), false);
  std::deque<int> queue;
  auto place = [&](int f) {
    placed[static_cast<std::size_t>(f)] = true;
    queue.push_back(f);
  };
  for (std::size_t seed = 0; seed < s.faces.size(); ++seed) {
    if (placed[seed]) continue;
    place(static_cast<int>(seed));
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      for (int k = 0; k < s.faces[static_cast<std::size_t>(f)].size(); ++k) {
        const SlotRef me{f, k};
        const SlotImage& im = s.faces[static_cast<std::size_t>(f)].image[static_cast<std::size_t>(k)];
        auto& mine = open[{im.edge, im.sign}];
        if (!mine.count(me)) continue;
        auto it = open.find({im.edge, -im.sign});
        if (it == open.end() || it->second.empty()) continue;
        auto& theirs = it->second;
        std::optional<SlotRef> pick;
        for (const SlotRef& cand : theirs)
          if (!placed[static_cast<std::size_t>(cand.face)]) {
            pick = cand;
            break;
          }
        if (!pick) pick = *theirs.begin();
        mine.erase(me);
        theirs.erase(*pick);
        s.gluing.emplace_back(me, *pick);
        if (!placed[static_cast<std::size_t>(pick->face)]) place(pick->face);
      }
    }
  }

  // Unmatched multiplicity per edge must equal the boundary coefficient.
  const OneCycle gamma = boundary_2(ball, c);
  for (const auto& [key, slots] : open) {
    if (slots.empty()) continue;
    const Coeff want = gamma.get(key.first);
    if (want * key.second <= 0 || static_cast<Coeff>(slots.size()) != want * key.second)
      throw InvariantError("edge " + std::to_string(key.first) +
                           " keeps unmatched slots beyond its boundary multiplicity");
  }
  derive_vertices(s);
  return s;
}

VerificationReport verify_surface(const SurfaceDiagram& s) {
  VerificationReport rep;
  auto add = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };
  auto slot_name = [](SlotRef r) {
    return "(" + std::to_string(r.face) + "," + std::to_string(r.slot) + ")";
  };
  const int nf = static_cast<int>(s.faces.size());
  bool shape_ok = true;
  for (int f = 0; f < nf; ++f) {
    const Face& face = s.faces[static_cast<std::size_t>(f)];
    if (face.size() == 0) {
      add("face " + std::to_string(f) + " has no slots");
      shape_ok = false;
    }
    if (face.corners.size() != face.labels.size()) {
      add("face " + std::to_string(f) + " corner count differs from slot count");
      shape_ok = false;
    }
    if (!face.image.empty() && face.image.size() != face.labels.size()) {
      add("face " + std::to_string(f) + " provenance has the wrong length");
      shape_ok = false;
    }
    for (int v : face.corners)
      if (v < 0 || v >= s.vertex_count) {
        add("face " + std::to_string(f) + " names vertex " + std::to_string(v) +
            " outside the vertex table");
        shape_ok = false;
      }
  }
  if (!shape_ok) return rep;

  auto valid = [&](SlotRef r) {
    return r.face >= 0 && r.face < nf && r.slot >= 0 &&
           r.slot < s.faces[static_cast<std::size_t>(r.face)].size();
  };
  std::map<SlotRef, SlotRef> partner;
  std::map<SlotRef, int> uses;
  for (const auto& [a, b] : s.gluing) {
    if (!valid(a) || !valid(b)) {
      add("gluing names a slot that does not exist");
      continue;
    }
    if (a == b) add("slot " + slot_name(a) + " glued to itself");
    ++uses[a];
    ++uses[b];
    partner[a] = b;
    partner[b] = a;
  }
  bool matching_ok = true;
  for (const auto& [r, n] : uses)
    if (n > 1) {
      add("slot " + slot_name(r) + " matched twice");
      matching_ok = false;
    }
  for (const auto& [a, b] : s.gluing) {
    if (!valid(a) || !valid(b) || a == b) continue;
    const Face& fa = s.faces[static_cast<std::size_t>(a.face)];
    const Face& fb = s.faces[static_cast<std::size_t>(b.face)];
    const auto ka = static_cast<std::size_t>(a.slot), kb = static_cast<std::size_t>(b.slot);
    if (fa.labels[ka] != -fb.labels[kb])
      add("glued slots " + slot_name(a) + " and " + slot_name(b) + " do not carry inverse labels");
    if (fa.corners[ka] != fb.corners[static_cast<std::size_t>(next_slot(fb, b.slot))] ||
        fa.corners[static_cast<std::size_t>(next_slot(fa, a.slot))] != fb.corners[kb])
      add("glued slots " + slot_name(a) + " and " + slot_name(b) + " do not reverse endpoints");
    if (!fa.image.empty() && !fb.image.empty() &&
        (fa.image[ka].edge != fb.image[kb].edge || fa.image[ka].sign != -fb.image[kb].sign))
      add("glued slots " + slot_name(a) + " and " + slot_name(b) + " map to different edges");
  }
  if (!matching_ok) return rep;

  // Link condition: corners at one vertex must form a single path/cycle
  // under the across-slot adjacency.
  const auto off = corner_offsets(s);
  UnionFind uf(static_cast<std::size_t>(off.back()));
  for (const auto& [a, b] : partner) {
    const Face& fb = s.faces[static_cast<std::size_t>(b.face)];
    uf.unite(off[a.face] + a.slot, off[b.face] + next_slot(fb, b.slot));
  }
  std::vector<std::set<int>> roots(static_cast<std::size_t>(s.vertex_count));
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < s.faces[static_cast<std::size_t>(f)].size(); ++k)
      roots[static_cast<std::size_t>(s.faces[static_cast<std::size_t>(f)].corners[static_cast<std::size_t>(k)])]
          .insert(uf.find(off[f] + k));
  for (int v = 0; v < s.vertex_count; ++v) {
    const auto n = roots[static_cast<std::size_t>(v)].size();
    if (n == 0) add("vertex " + std::to_string(v) + " has an empty link");
    if (n > 1) add("link not connected at vertex " + std::to_string(v));
  }

  // Boundary paths: every open slot exactly once, consecutive, closed.
  std::map<SlotRef, int> on_path;
  for (const auto& path : s.boundary_paths) {
    if (path.empty()) add("empty boundary path");
    for (std::size_t i = 0; i < path.size(); ++i) {
      const SlotRef r = path[i];
      if (!valid(r)) {
        add("boundary path names a slot that does not exist");
        continue;
      }
      ++on_path[r];
      if (partner.count(r)) add("boundary path uses glued slot " + slot_name(r));
      const SlotRef n = path[(i + 1) % path.size()];
      if (!valid(n)) continue;
      const Face& fr = s.faces[static_cast<std::size_t>(r.face)];
      const Face& fn = s.faces[static_cast<std::size_t>(n.face)];
      if (fr.corners[static_cast<std::size_t>(next_slot(fr, r.slot))] !=
          fn.corners[static_cast<std::size_t>(n.slot)])
        add("boundary path breaks after slot " + slot_name(r));
    }
  }
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < s.faces[static_cast<std::size_t>(f)].size(); ++k) {
      const SlotRef r{f, k};
      if (partner.count(r)) continue;
      auto it = on_path.find(r);
      if (it == on_path.end()) add("open slot " + slot_name(r) + " missing from boundary paths");
      else if (it->second > 1) add("open slot " + slot_name(r) + " repeated on boundary paths");
    }

  if (!s.vertex_image.empty()) {
    if (static_cast<int>(s.vertex_image.size()) != s.vertex_count) {
      add("vertex image table has the wrong length");
    } else {
      for (int f = 0; f < nf; ++f) {
        const Face& face = s.faces[static_cast<std::size_t>(f)];
        for (std::size_t k = 0; k < face.image.size(); ++k) {
          const auto& img = s.vertex_image[static_cast<std::size_t>(face.corners[k])];
          if (img && *img != face.image[k].from)
            add("corner (" + std::to_string(f) + "," + std::to_string(k) +
                ") disagrees with its vertex image");
        }
      }
    }
  }
  return rep;
}

SurfaceMetrics measure(const SurfaceDiagram& s) {
  const VerificationReport rep = verify_surface(s);
  if (!rep.ok())
    throw InputError("cannot measure an invalid surface: " + rep.violations.front());
  SurfaceMetrics m;
  m.area = static_cast<long>(s.faces.size());
  long slots = 0;
  for (const Face& f : s.faces) slots += f.size();
  const long pairs = static_cast<long>(s.gluing.size());
  m.boundary_length = slots - 2 * pairs;
  m.euler_characteristic = s.vertex_count - (pairs + m.boundary_length) + m.area;
  m.boundary_component_count = static_cast<int>(s.boundary_paths.size());

  // Components via faces and gluing.
  UnionFind faces(s.faces.size());
  for (const auto& [a, b] : s.gluing) faces.unite(a.face, b.face);
  std::map<int, int> comp_of_root;
  std::vector<int> comp(s.faces.size());
  for (std::size_t f = 0; f < s.faces.size(); ++f) {
    auto [it, fresh] = comp_of_root.emplace(faces.find(static_cast<int>(f)),
                                            static_cast<int>(comp_of_root.size()));
    comp[f] = it->second;
  }
  m.component_count = static_cast<int>(comp_of_root.size());

  // Per-component tallies for genus.
  const auto nc = static_cast<std::size_t>(m.component_count);
  std::vector<long> cv(nc, 0), ce(nc, 0), cf(nc, 0), cb(nc, 0);
  std::vector<int> vertex_comp(static_cast<std::size_t>(s.vertex_count), -1);
  for (std::size_t f = 0; f < s.faces.size(); ++f) {
    ++cf[static_cast<std::size_t>(comp[f])];
    ce[static_cast<std::size_t>(comp[f])] += s.faces[f].size();  // slots; fixed below
    for (int v : s.faces[f].corners) vertex_comp[static_cast<std::size_t>(v)] = comp[f];
  }
  for (const auto& [a, b] : s.gluing) --ce[static_cast<std::size_t>(comp[static_cast<std::size_t>(a.face)])];
  for (int v = 0; v < s.vertex_count; ++v) ++cv[static_cast<std::size_t>(vertex_comp[static_cast<std::size_t>(v)])];
  for (const auto& path : s.boundary_paths)
    ++cb[static_cast<std::size_t>(comp[static_cast<std::size_t>(path.front().face)])];
  for (std::size_t c = 0; c < nc; ++c) {
    const long chi = cv[c] - ce[c] + cf[c];
    const long twice_genus = 2 - cb[c] - chi;
    if (twice_genus < 0 || twice_genus % 2 != 0)
      throw InvariantError("component Euler characteristic is not that of an orientable surface");
    m.genus.push_back(static_cast<int>(twice_genus / 2));
  }

  // Every gluing pairs a slot with an inverse-labelled slot, so adjacent
  // faces induce opposite orientations on the shared edge.
  m.orientable = true;

  // Radius: multi-source BFS from boundary vertices.
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(s.vertex_count));
  for (const Face& f : s.faces)
    for (int k = 0; k < f.size(); ++k) {
      const int a = f.corners[static_cast<std::size_t>(k)];
      const int b = f.corners[static_cast<std::size_t>(next_slot(f, k))];
      adj[static_cast<std::size_t>(a)].push_back(b);
      adj[static_cast<std::size_t>(b)].push_back(a);
    }
  std::vector<int> dist(static_cast<std::size_t>(s.vertex_count), -1);
  std::deque<int> q;
  for (const auto& path : s.boundary_paths)
    for (const SlotRef& r : path) {
      const int v = s.faces[static_cast<std::size_t>(r.face)].corners[static_cast<std::size_t>(r.slot)];
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = 0;
        q.push_back(v);
      }
    }
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    for (int w : adj[static_cast<std::size_t>(v)])
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        q.push_back(w);
      }
  }
  int radius = 0;
  bool closed = false;
  for (int d : dist) {
    if (d < 0) closed = true;
    radius = std::max(radius, d);
    if (d != 0) ++m.interior_vertex_count;
  }
  if (!closed) m.radius = radius;
  return m;
}

OneCycle project_boundary(const SurfaceDiagram& s) {
  OneCycle out;
  for (const auto& path : s.boundary_paths)
    for (const SlotRef& r : path) {
      const Face& f = s.faces[static_cast<std::size_t>(r.face)];
      if (f.image.empty()) throw InputError("boundary projection needs face provenance");
      const SlotImage& im = f.image[static_cast<std::size_t>(r.slot)];
      out.add(im.edge, im.sign);
    }
  return out;
}

}  // namespace homfill
