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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>

#include "homfill/cayley.hpp"
#include "homfill/error.hpp"
#include "test_support.hpp"

using namespace homfill;
using homfill::testing::group;
using homfill::testing::word_of;

namespace {

bool in_l1_ball(int x, int y, int r) { return std::abs(x) + std::abs(y) <= r; }

// Lattice counts for Z^2: edges with both ends inside, unit squares with all
// four corners inside.
std::pair<std::size_t, std::size_t> lattice_edges_squares(int r) {
  std::size_t edges = 0, squares = 0;
  for (int x = -r; x <= r; ++x)
    for (int y = -r; y <= r; ++y) {
      if (!in_l1_ball(x, y, r)) continue;
      edges += in_l1_ball(x + 1, y, r);
      edges += in_l1_ball(x, y + 1, r);
      if (in_l1_ball(x + 1, y, r) && in_l1_ball(x, y + 1, r) && in_l1_ball(x + 1, y + 1, r))
        ++squares;
    }
  return {edges, squares};
}

TwoChain random_chain(std::mt19937_64& rng, const CayleyBall& ball, int terms) {
  TwoChain c;
  if (ball.cell_count() == 0) return c;
  for (int i = 0; i < terms; ++i)
    c.add(static_cast<CellId>(rng() % ball.cell_count()), static_cast<Coeff>(rng() % 7) - 3);
  return c;
}

}  // namespace

TEST_CASE("Z^2 ball of radius 2") {
  const Group z2 = group("z2.grp");
  const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, 2);
  const auto [edges, squares] = lattice_edges_squares(2);
  CHECK(ball.vertex_count() == 13);
  CHECK(ball.edge_count() == edges);
  CHECK(edges == 16);
  CHECK(ball.cell_count() == squares);
}

TEST_CASE("Z^2 ball counts agree with the lattice for several radii") {
  const Group z2 = group("z2.grp");
  for (int r = 1; r <= 6; ++r) {
    const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, r);
    const auto [edges, squares] = lattice_edges_squares(r);
    CHECK(ball.edge_count() == edges);
    CHECK(ball.cell_count() == squares);
  }
}

TEST_CASE("free group ball is a tree") {
  const Group f2 = group("f2.grp");
  const CayleyBall ball = CayleyBall::build(f2.backend, f2.pres, 2);
  CHECK(ball.vertex_count() == 17);
  CHECK(ball.edge_count() == 16);
  CHECK(ball.cell_count() == 0);
}

TEST_CASE("long relators do not fit in the unit ball") {
  const Presentation p({"a", "b"}, {Word{1, 1, 2, -1, -1, -2}});
  const HomPresentation hp = HomPresentation::all_marked(p);
  const GroupBackend ab = GroupBackend::free_abelian(2);
  CHECK(CayleyBall::build(ab, hp, 1).cell_count() == 0);
  CHECK(CayleyBall::build(ab, hp, 3).cell_count() > 0);
}

TEST_CASE("edges and cells are consistent with the backend") {
  for (const char* name : {"z2.grp", "s3.grp", "z3.grp", "f2_relator.grp"}) {
    const Group g = group(name);
    const CayleyBall ball = CayleyBall::build(g.backend, g.pres, 3);
    for (const Edge& e : ball.edges())
      CHECK(g.backend.normal_form(concat(ball.vertex(e.source), Word{make_letter(e.generator)})) ==
            ball.vertex(e.target));
    for (const Cell& c : ball.cells()) {
      const Word& r = g.pres.base.relators()[static_cast<std::size_t>(c.relator)];
      REQUIRE(c.walk.size() == r.size());
      CHECK(c.walk.front().from == c.base);
      CHECK(c.walk.back().to == c.base);
      for (std::size_t k = 0; k + 1 < c.walk.size(); ++k) CHECK(c.walk[k].to == c.walk[k + 1].from);
      CHECK(is_cycle(ball, c.boundary));
    }
  }
}

TEST_CASE("boundary of small chains") {
  const Group z2 = group("z2.grp");
  const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, 3);
  TwoChain one;
  one.add(0, 1);
  CHECK(boundary_2(ball, one) == ball.cell(0).boundary);
  CHECK(cycle_length(boundary_2(ball, one)) == 4);
  TwoChain zero;
  zero.add(0, 1);
  zero.add(0, -1);
  CHECK(zero.empty());
  CHECK(boundary_2(ball, zero).empty());

  // Squares at e and at a share the edge b from a.
  const CellId s0 = *ball.find_cell(ball.identity(), 0);
  const CellId s1 = *ball.find_cell(*ball.locate(Word{1}), 0);
  TwoChain two;
  two.add(s0, 1);
  two.add(s1, 1);
  const OneCycle bd = boundary_2(ball, two);
  CHECK(cycle_length(bd) == 6);
  const EdgeId shared = *ball.find_edge(*ball.locate(Word{1}), 1);
  CHECK(bd.get(shared) == 0);
  // Incidence-matrix oracle: sum of per-cell walks.
  OneCycle oracle;
  for (CellId id : {s0, s1})
    for (const EdgeStep& s : ball.cell(id).walk) oracle.add(s.edge, s.sign);
  CHECK(bd == oracle);
}

TEST_CASE("cycle length") {
  const Group z2 = group("z2.grp");
  const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, 3);
  CHECK(cycle_length(OneCycle{}) == 0);
  const OneCycle sq = loop_to_cycle(ball, 0, word_of(z2, "a b a' b'"));
  CHECK(cycle_length(sq) == 4);
  CHECK(cycle_length(sq.scaled(2)) == 8);
}

TEST_CASE("loop_to_cycle") {
  const Group z2 = group("z2.grp");
  const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, 3);
  const OneCycle sq = loop_to_cycle(ball, 0, word_of(z2, "a b a' b'"));
  CHECK(sq == ball.cell(*ball.find_cell(0, 0)).boundary);
  CHECK(loop_to_cycle(ball, 0, word_of(z2, "a a'")).empty());
  const CayleyBall wide = CayleyBall::build(z2.backend, z2.pres, 4);
  const OneCycle big = loop_to_cycle(wide, 0, word_of(z2, "a a b b a' a' b' b'"));
  CHECK(cycle_length(big) == 8);
  CHECK(is_cycle(wide, big));
  CHECK_THROWS_AS(loop_to_cycle(ball, 0, word_of(z2, "a b")), InputError);
  try {
    loop_to_cycle(ball, 0, word_of(z2, "a a a a a' a' a' a'"));
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("a a a a") != std::string::npos);
  }
}

TEST_CASE("boundary of a boundary vanishes") {
  std::mt19937_64 rng(17);
  for (const char* name : {"z2.grp", "s3.grp", "z3.grp", "f2_relator.grp", "z2_twist.grp"}) {
    const Group g = group(name);
    const CayleyBall ball = CayleyBall::build(g.backend, g.pres, 3);
    for (int i = 0; i < 500; ++i) {
      const TwoChain c = random_chain(rng, ball, 1 + static_cast<int>(rng() % 8));
      CHECK(is_cycle(ball, boundary_2(ball, c)));
    }
  }
}

TEST_CASE("translating a cell translates its boundary") {
  const Group z2 = group("z2.grp");
  const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, 5);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const CellId id = static_cast<CellId>(rng() % ball.cell_count());
    const Cell& c = ball.cell(id);
    const Word g = homfill::testing::random_word(rng, 2, 2);
    auto moved = ball.translate(g, c.base);
    if (!moved) continue;
    auto target = ball.find_cell(*moved, c.relator);
    if (!target) continue;
    OneCycle expected;
    for (const auto& [e, m] : c.boundary) {
      const Edge& edge = ball.edge(e);
      auto src = ball.translate(g, edge.source);
      REQUIRE(src);
      expected.add(*ball.find_edge(*src, edge.generator), m);
    }
    CHECK(ball.cell(*target).boundary == expected);
  }
}

TEST_CASE("building twice gives identical indexing") {
  const Group g = group("z3.grp");
  const CayleyBall a = CayleyBall::build(g.backend, g.pres, 3);
  const CayleyBall b = CayleyBall::build(g.backend, g.pres, 3);
  CHECK(a.vertices() == b.vertices());
  REQUIRE(a.edge_count() == b.edge_count());
  for (std::size_t i = 0; i < a.edge_count(); ++i) {
    CHECK(a.edges()[i].source == b.edges()[i].source);
    CHECK(a.edges()[i].generator == b.edges()[i].generator);
  }
  REQUIRE(a.cell_count() == b.cell_count());
  for (std::size_t i = 0; i < a.cell_count(); ++i) {
    CHECK(a.cells()[i].base == b.cells()[i].base);
    CHECK(a.cells()[i].relator == b.cells()[i].relator);
  }
}

TEST_CASE("coset labels in an extension ball") {
  const Group g = group("z3.grp");
  const CayleyBall ball = CayleyBall::build(g.backend, g.pres, 2);
  CHECK(ball.coset_label(ball.identity()).empty());
  CHECK(ball.coset_label(*ball.locate(word_of(g, "a t"))) == Word{1});
  CHECK(ball.coset_label(*ball.locate(word_of(g, "t' b"))) == Word{-1});
}
