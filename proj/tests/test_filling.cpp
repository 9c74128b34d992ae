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
#include <map>

#include "homfill/error.hpp"
#include "homfill/filling.hpp"
#include "test_support.hpp"

using namespace homfill;
using homfill::testing::group;
using homfill::testing::word_of;

namespace {

// Z^2 has no 2-cycles, so the unique filling of a loop assigns each unit
// square its winding number. Ray upward from the square's centre.
Coeff winding_area(const Word& loop) {
  std::map<std::pair<int, int>, int> horizontal;  // (x, y) of left end -> signed traversals
  int x = 0, y = 0;
  for (int l : loop) {
    const int g = generator_of(l);
    const int s = is_inverse(l) ? -1 : 1;
    if (g == 0) {
      horizontal[{s > 0 ? x : x - 1, y}] += s;
      x += s;
    } else {
      y += s;
    }
  }
  REQUIRE(x == 0);
  REQUIRE(y == 0);
  std::map<std::pair<int, int>, int> winding;
  for (const auto& [pos, dir] : horizontal)
    for (int below = pos.second - 1; below >= -20; --below) winding[{pos.first, below}] -= dir;
  Coeff area = 0;
  for (const auto& [pos, w] : winding) area += std::abs(w);
  return area;
}

Word random_closed_z2(std::mt19937_64& rng, int half) {
  // Random word with equal numbers of a, a', b, b' shuffled; always closed.
  Word w;
  std::uniform_int_distribution<int> k(0, half);
  const int na = k(rng), nb = half - na;
  for (int i = 0; i < na; ++i) w.insert(w.end(), {1, -1});
  for (int i = 0; i < nb; ++i) w.insert(w.end(), {2, -2});
  std::shuffle(w.begin(), w.end(), rng);
  return w;
}

}  // namespace

TEST_CASE("single commutator has area one") {
  const Group z2 = group("z2.grp");
  const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, 3);
  const OneCycle g = loop_to_cycle(ball, 0, word_of(z2, "a b a' b'"));
  for (Solver s : {Solver::kExactIlp, Solver::kBruteForce}) {
    FillOptions o;
    o.solver = s;
    const FillingResult r = harea_fill(ball, g, o);
    CHECK(r.status == FillStatus::kOptimal);
    CHECK(r.area == 1);
    CHECK(boundary_2(ball, r.chain) == g);
  }
}

TEST_CASE("zero cycle has area zero") {
  const Group z2 = group("z2.grp");
  const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, 2);
  const FillingResult r = harea_fill(ball, OneCycle{});
  CHECK(r.status == FillStatus::kOptimal);
  CHECK(r.area == 0);
  CHECK(r.chain.empty());
}

TEST_CASE("2x2 square loop has area four") {
  const Group z2 = group("z2.grp");
  const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, 5);
  const Word w = word_of(z2, "a a b b a' a' b' b'");
  const OneCycle g = loop_to_cycle(ball, 0, w);
  CHECK(winding_area(w) == 4);
  FillOptions brute;
  brute.solver = Solver::kBruteForce;
  CHECK(harea_fill(ball, g).area == 4);
  CHECK(harea_fill(ball, g, brute).area == 4);
}

TEST_CASE("cycles that do not bound are reported") {
  const Group f2 = group("f2.grp");
  const CayleyBall ball = CayleyBall::build(f2.backend, f2.pres, 2);
  const FillingResult r = harea_fill(ball, OneCycle{});
  CHECK(r.area == 0);
  const Group z2 = group("z2.grp");
  const CayleyBall zb = CayleyBall::build(z2.backend, z2.pres, 2);
  OneCycle open;
  open.add(0, 1);
  CHECK_THROWS_AS(harea_fill(zb, open), InputError);
}

TEST_CASE("Z^2 areas agree with winding numbers") {
  const Group z2 = group("z2.grp");
  const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, 7);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 150; ++i) {
    const Word w = random_closed_z2(rng, 2 + static_cast<int>(rng() % 3));
    const OneCycle g = loop_to_cycle(ball, 0, w);
    const FillingResult r = harea_fill(ball, g);
    REQUIRE(r.status == FillStatus::kOptimal);
    CHECK(r.area == winding_area(w));
    CHECK(boundary_2(ball, r.chain) == g);
  }
}

TEST_CASE("FA for Z^2") {
  const Group z2 = group("z2.grp");
  const FATable t = fa_estimate(z2.backend, z2.pres, 8, 5);
  const auto v = t.as_array();
  REQUIRE(v.size() == 9);
  CHECK(v[0] == 0);
  CHECK(v[3] == 0);
  CHECK(v[4] == 1);
  CHECK(v[8] == 4);
  for (std::size_t n = 1; n < v.size(); ++n) CHECK(v[n] >= v[n - 1]);
  REQUIRE(t.values[8].witness);
  CHECK(winding_area(*t.values[8].witness) == 4);
}

TEST_CASE("FA for free groups") {
  const Group f2 = group("f2.grp");
  for (Coeff x : fa_estimate(f2.backend, f2.pres, 6, 3).as_array()) CHECK(x == 0);
  const Group fr = group("f2_relator.grp");
  const auto v = fa_estimate(fr.backend, fr.pres, 6, 3).as_array();
  CHECK(v[2] == 0);
  CHECK(v[3] == 1);
  for (std::size_t n = 1; n < v.size(); ++n) CHECK(v[n] >= v[n - 1]);
}

TEST_CASE("superadditive closure examples") {
  CHECK(superadditive_closure({0, 1, 3}) == std::vector<Coeff>{0, 1, 3});
  CHECK(superadditive_closure({0, 2, 3})[2] == 4);
  CHECK(superadditive_closure({0, 0, 0, 0}) == std::vector<Coeff>{0, 0, 0, 0});
}

TEST_CASE("superadditive closure is superadditive and dominates") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Coeff> f(1 + rng() % 15);
    for (auto& x : f) x = static_cast<Coeff>(rng() % 20);
    f[0] = 0;
    const auto c = superadditive_closure(f);
    for (std::size_t n = 0; n < f.size(); ++n) CHECK(c[n] >= f[n]);
    for (std::size_t m = 1; m < f.size(); ++m)
      for (std::size_t n = 1; m + n < f.size(); ++n) CHECK(c[m + n] >= c[m] + c[n]);
  }
}

TEST_CASE("finite-range domination checks") {
  std::vector<Coeff> lin(21), quad(21);
  for (int n = 0; n <= 20; ++n) {
    lin[n] = n;
    quad[n] = static_cast<Coeff>(n) * n;
  }
  const RelationCheck refl = check_preceq(lin, lin, 8);
  CHECK(refl.holds);
  CHECK(refl.constant == 1);
  CHECK_FALSE(check_preceq(quad, lin, 50).holds);
  const RelationCheck up = check_preceq(lin, quad, 8);
  CHECK(up.holds);
  CHECK(up.constant == 1);
  CHECK(check_affine_equiv(lin, lin, 4).holds);
  CHECK_THROWS_AS(check_preceq(lin, std::vector<Coeff>(5), 4), InputError);
}

TEST_CASE("ILP and brute force agree on short cycles") {
  for (const char* name : {"z2.grp", "f2_relator.grp", "s3.grp"}) {
    const Group g = group(name);
    const CayleyBall ball = CayleyBall::build(g.backend, g.pres, 3);
    FillOptions brute;
    brute.solver = Solver::kBruteForce;
    for (const OneCycle& c : enumerate_cycles(ball, 6)) {
      const FillingResult a = harea_fill(ball, c);
      const FillingResult b = harea_fill(ball, c, brute);
      REQUIRE(a.status == b.status);
      if (a.status == FillStatus::kOptimal) {
        CHECK(a.area == b.area);
        CHECK(boundary_2(ball, a.chain) == c);
        CHECK(boundary_2(ball, b.chain) == c);
      }
    }
  }
}

TEST_CASE("larger balls never increase the area") {
  const Group g = group("z2_twist.grp");
  const Word w = word_of(g, "a b a' b'");
  Coeff prev = -1;
  for (int r = 2; r <= 5; ++r) {
    const CayleyBall ball = CayleyBall::build(g.backend, g.pres, r);
    const FillingResult f = harea_fill(ball, loop_to_cycle(ball, 0, w));
    if (f.status != FillStatus::kOptimal) continue;
    if (prev >= 0) CHECK(f.area <= prev);
    prev = f.area;
  }
  CHECK(prev >= 1);
}

TEST_CASE("multiples fill within multiples") {
  const Group z2 = group("z2.grp");
  const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, 4);
  for (const char* w : {"a b a' b'", "a a b a' a' b'", "a b b a' b' b'"}) {
    const OneCycle g = loop_to_cycle(ball, 0, word_of(z2, w));
    const Coeff base = harea_fill(ball, g).area;
    for (int k : {2, 3}) CHECK(harea_fill(ball, g.scaled(k)).area <= k * base);
  }
}

TEST_CASE("enumerated fillings are exactly the minimal ones") {
  const Group z2 = group("z2.grp");
  const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, 4);
  const OneCycle g = loop_to_cycle(ball, 0, word_of(z2, "a a b a' a' b'"));
  const auto all = enumerate_fillings(ball, g, 2, {}, 16);
  REQUIRE(all.size() == 1);
  CHECK(boundary_2(ball, all[0]) == g);
  CHECK(all[0].l1() == 2);
}

TEST_CASE("loop enumeration") {
  const Group z2 = group("z2.grp");
  const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, 3);
  for (const Loop& l : enumerate_loops(ball, 6)) {
    CHECK(l.word.size() <= 6);
    CHECK(free_reduce(l.word) == l.word);
    CHECK(z2.backend.normal_form(l.word).empty());
    CHECK(loop_to_cycle(ball, 0, l.word) == l.cycle);
  }
}
