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

#include <cmath>

#include "homfill/error.hpp"
#include "homfill/experiments.hpp"
#include "test_support.hpp"

using namespace homfill;
using homfill::testing::group;

namespace {

int ceil_log2(long n) {
  int k = 0;
  while ((1L << k) < n) ++k;
  return k;
}

// ceil(p/q) for p >= 0, q > 0.
Coeff ceil_div(Coeff p, Coeff q) { return (p + q - 1) / q; }

}  // namespace

TEST_CASE("free group pair is zero") {
  const Group f2 = group("f2.grp");
  const ARPairReport r = measure_ar_pair(f2.backend, f2.pres, 6, 3);
  for (Coeff x : r.f_table) CHECK(x == 0);
  for (int x : r.g_table) CHECK(x == 0);
}

TEST_CASE("Z^2 area-radius pair") {
  const Group z2 = group("z2.grp");
  const ARPairReport r = measure_ar_pair(z2.backend, z2.pres, 8, 5);
  REQUIRE(r.f_table.size() == 9);
  CHECK(r.f_table[4] == 1);
  CHECK(r.g_table[4] == 0);
  CHECK(r.f_table[8] == 4);
  CHECK(r.g_table[8] == 1);
  for (std::size_t n = 1; n < r.f_table.size(); ++n) {
    CHECK(r.f_table[n] >= r.f_table[n - 1]);
    CHECK(r.g_table[n] >= r.g_table[n - 1]);
  }
  for (const ARSample& s : r.samples) {
    CHECK(s.area <= r.f_table[static_cast<std::size_t>(s.length)]);
    CHECK(s.radius <= r.g_table[static_cast<std::size_t>(s.length)]);
  }
  REQUIRE(r.witnesses[8]);
  const SurfaceMetrics m = measure(r.witnesses[8]->diagram);
  CHECK(m.radius == 1);
  CHECK(m.area <= r.f_table[8]);
}

TEST_CASE("filling policies agree on Z^2 areas") {
  const Group z2 = group("z2.grp");
  const CayleyBall ball = CayleyBall::build(z2.backend, z2.pres, 4);
  const ARPairReport base = measure_ar_pair(ball, 6);
  for (FillingPolicy p : {FillingPolicy::kMinRadiusAmongMinArea, FillingPolicy::kSearchBudgeted}) {
    ARPairOptions o;
    o.policy = p;
    const ARPairReport r = measure_ar_pair(ball, 6, o);
    CHECK(r.policy == p);
    for (std::size_t n = 0; n < r.g_table.size(); ++n) CHECK(r.g_table[n] <= base.g_table[n]);
    if (p == FillingPolicy::kMinRadiusAmongMinArea) CHECK(r.f_table == base.f_table);
  }
  CHECK(parse_policy(to_string(FillingPolicy::kSearchBudgeted)) == FillingPolicy::kSearchBudgeted);
  CHECK_THROWS_AS(parse_policy("fastest"), InputError);
}

TEST_CASE("hyperbolic pair values") {
  const HyperbolicARPair h = hyperbolic_ar_pair("1", "1", 8);
  CHECK(h.f[1] == 1);
  CHECK(h.g[1] == 1);
  CHECK(h.f[2] == 4);
  CHECK(h.g[2] == 2);
  CHECK(h.f[8] == 32);
  CHECK(h.g[8] == 4);
  CHECK(h.exact[8]);
  CHECK_FALSE(h.exact[3]);
  CHECK(h.f_at_least_n);

  const HyperbolicARPair q = hyperbolic_ar_pair("3/2", "0.5", 20);
  for (long n = 1; n <= 20; ++n) {
    const Coeff l1 = ceil_log2(n) + 1;
    CHECK(q.f[static_cast<std::size_t>(n)] == ceil_div(3 * n * l1, 2));
    CHECK(q.g[static_cast<std::size_t>(n)] == ceil_div(l1, 2));
    CHECK(log2_upper(n) == ceil_log2(n));
  }
  CHECK_THROWS_AS(hyperbolic_ar_pair("0", "1", 4), InputError);
  CHECK_THROWS_AS(hyperbolic_ar_pair("1", "-2", 4), InputError);
  CHECK_THROWS_AS(hyperbolic_ar_pair("x", "1", 4), InputError);
}

TEST_CASE("degree reports") {
  const HyperbolicARPair h = hyperbolic_ar_pair("1", "1", 64);
  const DegreeReport one = polynomial_degree_report(1, h);
  for (std::size_t n = 0; n < h.f.size(); ++n) CHECK(one.composite[n] == std::to_string(h.f[n]));
  CHECK(one.degree == 1);
  CHECK(one.degree <= 2);
  CHECK(one.symbolic_exponent == doctest::Approx(1.0));

  const DegreeReport two = polynomial_degree_report(2, h);
  CHECK(two.degree == 3);
  CHECK(two.symbolic_exponent == doctest::Approx(3.0));

  // composite(1) = M^(2 g(1)) f(1).
  const DegreeReport three = polynomial_degree_report(3, hyperbolic_ar_pair("2", "1", 8));
  CHECK(three.composite[1] == "18");
}

TEST_CASE("equivalent presentations of Z^2") {
  const Group a = group("z2.grp");
  const Group b = group("z2_c.grp");
  const EquivalenceReport same =
      compare_presentations(a, a, {{"a", "a"}, {"b", "b"}}, {{"a", "a"}, {"b", "b"}}, 6, 4);
  CHECK(same.holds);
  CHECK(same.f_a_below_b.constant == 1);
  CHECK(same.f_b_below_a.constant == 1);

  const EquivalenceReport r = compare_presentations(
      a, b, {{"a", "a"}, {"b", "b"}}, {{"a", "a"}, {"b", "b"}, {"c", "a b"}}, 6, 4, 8);
  CHECK(r.holds);
  CHECK(r.spot_checks > 0);
  CHECK(r.f_a_below_b.constant <= 8);
  CHECK(r.f_b_below_a.constant <= 8);
}

TEST_CASE("a dictionary that is not a homomorphism is rejected") {
  const Group z2 = group("z2.grp");
  const Group f2 = group("f2.grp");
  CHECK_THROWS_AS(compare_presentations(z2, f2, {{"a", "a"}, {"b", "b"}},
                                        {{"a", "a"}, {"b", "b"}}, 4, 2),
                  InputError);
}
