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

#ifndef HOMFILL_SURFACE_HPP_
#define HOMFILL_SURFACE_HPP_

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "homfill/cayley.hpp"

namespace homfill {

struct SlotRef {
  int face = 0;
  int slot = 0;
  friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

/// Where a slot lands in the ball: the edge, the traversal sign, and the
/// image of the slot's start corner.
struct SlotImage {
  EdgeId edge;
  int sign;
  VertexId from;
};

/// A polygon. Slot k runs from corners[k] to corners[k+1 mod len] and
/// carries labels[k].
struct Face {
  std::vector<Letter> labels;
  std::vector<int> corners;        // local vertex ids
  std::optional<CellId> cell;      // provenance
  int sign = 1;                    // -1: orientation-reversed copy
  std::vector<SlotImage> image;    // empty when built without provenance

  int size() const { return static_cast<int>(labels.size()); }
};

/// Compact surface with boundary, built from polygons glued along slots.
struct SurfaceDiagram {
  std::vector<Face> faces;
  std::vector<std::pair<SlotRef, SlotRef>> gluing;
  int vertex_count = 0;
  std::vector<std::optional<VertexId>> vertex_image;  // per local vertex
  std::vector<std::vector<SlotRef>> boundary_paths;   // cyclic sequences
};

struct VerificationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct SurfaceMetrics {
  long area = 0;
  std::optional<int> radius;  // nullopt when a component has no boundary
  long boundary_length = 0;
  int component_count = 0;
  long euler_characteristic = 0;
  int boundary_component_count = 0;
  int interior_vertex_count = 0;
  bool orientable = true;
  std::vector<int> genus;  // per component
};

/// Glues |a_i| copies of each cell (reversed when a_i < 0). Slots are
/// processed in placement order; each unmatched slot is glued to the lowest
/// unplaced copy carrying the same image edge with opposite sign, else to
/// the lowest such open slot on a placed face. New components start from
/// the lowest unplaced copy.
SurfaceDiagram assemble_surface(const CayleyBall& ball, const TwoChain& c);

VerificationReport verify_surface(const SurfaceDiagram& s);

/// Throws InputError when the diagram fails verification.
SurfaceMetrics measure(const SurfaceDiagram& s);

/// Signed image of the unmatched slots. Throws InputError without
/// provenance.
OneCycle project_boundary(const SurfaceDiagram& s);

/// Recomputes local vertex ids and boundary paths from faces and gluing.
/// Used by assembly and by hand-built diagrams that only give the gluing.
void derive_vertices(SurfaceDiagram& s);

}  // namespace homfill

#endif  // HOMFILL_SURFACE_HPP_
