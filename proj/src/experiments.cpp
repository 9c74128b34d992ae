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

#include "homfill/experiments.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "homfill/error.hpp"

namespace homfill {

std::string to_string(FillingPolicy p) {
  switch (p) {
    case FillingPolicy::kMinAreaThenMeasureRadius: return "min_area_then_measure_radius";
    case FillingPolicy::kMinRadiusAmongMinArea: return "min_radius_among_min_area";
    case FillingPolicy::kSearchBudgeted: return "search_budgeted";
  }
  return "unknown";
}

FillingPolicy parse_policy(const std::string& name) {
  for (auto p : {FillingPolicy::kMinAreaThenMeasureRadius, FillingPolicy::kMinRadiusAmongMinArea,
                 FillingPolicy::kSearchBudgeted})
    if (to_string(p) == name) return p;
  throw InputError("unknown filling policy '" + name + "'");
}

namespace {

struct Chosen {
  bool ok = false;
  ARSample sample;
  SurfaceDiagram diagram;
};

// Radius of a candidate, or nullopt when its diagram has a closed component.
std::optional<std::pair<int, SurfaceDiagram>> radius_of(const CayleyBall& ball,
                                                        const TwoChain& c) {
  SurfaceDiagram s = assemble_surface(ball, c);
  const SurfaceMetrics m = measure(s);
  if (!m.radius) return std::nullopt;
  return std::make_pair(*m.radius, std::move(s));
}

Chosen choose_filling(const CayleyBall& ball, const Loop& loop, const ARPairOptions& opts) {
  Chosen out;
  const FillingResult base = harea_fill(ball, loop.cycle, opts.fill);
  if (base.status != FillStatus::kOptimal) return out;
  out.sample.word = loop.word;
  out.sample.length = loop.cycle.l1();

  std::vector<TwoChain> candidates{base.chain};
  if (opts.policy != FillingPolicy::kMinAreaThenMeasureRadius) {
    FillOptions bf = opts.fill;
    bf.solver = Solver::kBruteForce;
    const Coeff top = opts.policy == FillingPolicy::kSearchBudgeted
                          ? base.area + std::max<Coeff>(0, opts.area_slack)
                          : base.area;
    std::size_t room = opts.candidate_limit;
    for (Coeff a = base.area; a <= top && room > 0; ++a) {
      auto more = enumerate_fillings(ball, loop.cycle, a, bf, room);
      room -= more.size();
      for (auto& c : more)
        if (c != base.chain) candidates.push_back(std::move(c));
    }
    out.sample.truncated = room == 0;
  }
  out.sample.candidates = static_cast<long>(candidates.size());

  for (const TwoChain& c : candidates) {
    auto r = radius_of(ball, c);
    if (!r) continue;
    const Coeff area = c.l1();
    if (!out.ok || r->first < out.sample.radius ||
        (r->first == out.sample.radius && area < out.sample.area)) {
      out.ok = true;
      out.sample.radius = r->first;
      out.sample.area = area;
      out.diagram = std::move(r->second);
    }
  }
  return out;
}

template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i; !failed && (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

mpq_class parse_rational(const std::string& text, const char* what) {
  mpq_class q;
  std::string s = text;
  const auto dot = s.find('.');
  try {
    if (dot != std::string::npos) {
      const std::string frac = s.substr(dot + 1);
      if (frac.find_first_not_of("0123456789") != std::string::npos || frac.empty())
        throw InputError("");
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      q = mpq_class(mpz_class(s.substr(0, dot) + frac), den);
    } else if (q.set_str(s, 10) != 0) {
      throw InputError("");
    }
  } catch (const std::exception&) {
    throw InputError(std::string(what) + " must be a positive rational, got '" + text + "'");
  }
  q.canonicalize();
  if (q <= 0) throw InputError(std::string(what) + " must be positive, got '" + text + "'");
  return q;
}

Coeff ceil_to_coeff(const mpq_class& q) {
  mpz_class z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!z.fits_slong_p()) throw ResourceError("table value exceeds 64 bits");
  return z.get_si();
}

double log2_of(const mpz_class& z) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

}  // namespace

ARPairReport measure_ar_pair(const CayleyBall& ball, int n_max, const ARPairOptions& opts) {
  if (n_max < 1) throw InputError("n_max must be at least 1");
  const std::vector<Loop> loops = enumerate_loops(ball, n_max);
  std::vector<Chosen> chosen(loops.size());
  parallel_for(loops.size(), opts.fill.threads,
               [&](std::size_t i) { chosen[i] = choose_filling(ball, loops[i], opts); });

  ARPairReport rep;
  rep.policy = opts.policy;
  rep.ball_radius = ball.radius();
  const auto size = static_cast<std::size_t>(n_max) + 1;
  rep.f_table.assign(size, 0);
  rep.g_table.assign(size, 0);
  rep.witnesses.assign(size, std::nullopt);
  std::vector<std::optional<ARSample>> best(size);
  for (std::size_t i = 0; i < loops.size(); ++i) {
    Chosen& ch = chosen[i];
    if (!ch.ok) {
      ++rep.gaps;
      continue;
    }
    const auto n = static_cast<std::size_t>(ch.sample.length);
    rep.f_table[n] = std::max(rep.f_table[n], ch.sample.area);
    auto& b = best[n];
    if (!b || ch.sample.radius > b->radius ||
        (ch.sample.radius == b->radius && ch.sample.area > b->area)) {
      b = ch.sample;
      rep.witnesses[n] = ARWitness{ch.sample.word, std::move(ch.diagram)};
    }
    rep.g_table[n] = std::max(rep.g_table[n], ch.sample.radius);
    rep.samples.push_back(std::move(ch.sample));
  }
  for (std::size_t n = 1; n < size; ++n) {
    rep.f_table[n] = std::max(rep.f_table[n], rep.f_table[n - 1]);
    rep.g_table[n] = std::max(rep.g_table[n], rep.g_table[n - 1]);
    const auto& prev = best[n - 1];
    if (prev && (!best[n] || prev->radius > best[n]->radius ||
                 (prev->radius == best[n]->radius && prev->area > best[n]->area))) {
      best[n] = prev;
      rep.witnesses[n] = rep.witnesses[n - 1];
    }
  }
  return rep;
}

ARPairReport measure_ar_pair(const GroupBackend& backend, const HomPresentation& pres,
                             int n_max, int ball_radius, const ARPairOptions& opts) {
  return measure_ar_pair(CayleyBall::build(backend, pres, ball_radius), n_max, opts);
}

int log2_upper(long n) {
  if (n < 1) throw InputError("log2 needs a positive argument");
  int l = 0;
  while ((1L << l) < n) ++l;
  return l;
}

HyperbolicARPair hyperbolic_ar_pair(const std::string& b, const std::string& c, int n_max) {
  if (n_max < 1) throw InputError("n_max must be at least 1");
  const mpq_class bq = parse_rational(b, "B");
  const mpq_class cq = parse_rational(c, "C");
  HyperbolicARPair out;
  out.b = bq.get_str();
  out.c = cq.get_str();
  out.f.assign(static_cast<std::size_t>(n_max) + 1, 0);
  out.g.assign(static_cast<std::size_t>(n_max) + 1, 0);
  out.exact.assign(static_cast<std::size_t>(n_max) + 1, true);
  out.f_at_least_n = true;
  for (long n = 1; n <= n_max; ++n) {
    const int l = log2_upper(n);
    const auto i = static_cast<std::size_t>(n);
    out.exact[i] = (1L << l) == n;
    out.f[i] = ceil_to_coeff(bq * n * (l + 1));
    out.g[i] = ceil_to_coeff(cq * (l + 1));
    if (out.f[i] < n) out.f_at_least_n = false;
  }
  if (bq >= 1 && !out.f_at_least_n) throw InvariantError("f(n) < n although B >= 1");
  return out;
}

DegreeReport polynomial_degree_report(Coeff m, const HyperbolicARPair& hyp) {
  if (m < 1) throw InputError("M must be at least 1");
  if (hyp.f.size() < 2 || hyp.g.size() != hyp.f.size())
    throw InputError("hyperbolic table is empty or malformed");
  DegreeReport rep;
  rep.m = m;
  const mpz_class m2 = mpz_class(static_cast<long>(m)) * static_cast<long>(m);
  const std::size_t n_max = hyp.f.size() - 1;
  std::vector<mpz_class> comp(hyp.f.size());
  rep.composite.push_back("0");
  for (std::size_t n = 1; n <= n_max; ++n) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), m2.get_mpz_t(), static_cast<unsigned long>(hyp.g[n]));
    comp[n] = p * static_cast<long>(hyp.f[n]);
    rep.composite.push_back(comp[n].get_str());
  }

  // Least squares of log2(composite / (L+1)) against log2 n over powers of two.
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n = 1; n <= n_max; n *= 2) {
    const int l = log2_upper(static_cast<long>(n));
    pts.emplace_back(static_cast<double>(l), log2_of(comp[n]) - std::log2(l + 1.0));
  }
  if (pts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double k = static_cast<double>(pts.size());
    rep.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  } else {
    rep.slope = 1;
  }
  rep.degree = static_cast<int>(std::ceil(rep.slope - 1e-9));

  mpq_class kappa = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    mpz_class nd;
    mpz_ui_pow_ui(nd.get_mpz_t(), n, static_cast<unsigned long>(std::max(rep.degree, 0)));
    const mpq_class r(comp[n], nd * (log2_upper(static_cast<long>(n)) + 1));
    if (r > kappa) kappa = r;
  }
  mpz_class kz;
  mpz_cdiv_q(kz.get_mpz_t(), kappa.get_num_mpz_t(), kappa.get_den_mpz_t());
  rep.kappa = kz.get_str();
  rep.symbolic_exponent = 1 + 2 * mpq_class(hyp.c).get_d() * std::log2(static_cast<double>(m));
  rep.caveat = "finite-range fit on n <= " + std::to_string(n_max) +
               "; composite <= kappa * n^d * (log2 n + 1) holds on the sampled range only";
  return rep;
}

DegreeReport polynomial_degree_report(const TransferConstants& k, const HyperbolicARPair& hyp) {
  return polynomial_degree_report(k.m, hyp);
}

namespace {

Word translate_word(std::span<const Letter> w, const Presentation& from, const Presentation& to,
                    const GeneratorDictionary& dict) {
  Word out;
  for (Letter l : w) {
    const std::string& name = from.generators()[static_cast<std::size_t>(generator_of(l))];
    auto it = dict.find(name);
    if (it == dict.end()) throw InputError("dictionary has no entry for generator '" + name + "'");
    Word img = to.parse_word(it->second);
    if (is_inverse(l)) img = inverse_word(img);
    out.insert(out.end(), img.begin(), img.end());
  }
  return free_reduce(out);
}

int spot_check(const Group& from, const Group& to, const GeneratorDictionary& there,
               const GeneratorDictionary& back) {
  int checks = 0;
  const Presentation& pf = from.pres.base;
  const Presentation& pt = to.pres.base;
  for (const Word& r : pf.relators()) {
    const Word img = translate_word(r, pf, pt, there);
    ++checks;
    if (!to.backend.equal_in_group(img, Word{}))
      throw InputError("dictionary spot-check failed: relator '" + pf.format(r) +
                       "' maps to '" + pt.format(img) + "', which is not the identity");
  }
  for (int g = 0; g < pf.rank(); ++g) {
    const Word x{make_letter(g)};
    const Word round = translate_word(translate_word(x, pf, pt, there), pt, pf, back);
    ++checks;
    if (!from.backend.equal_in_group(round, x))
      throw InputError("dictionary spot-check failed: generator '" + pf.generators()[g] +
                       "' does not survive the round trip");
  }
  return checks;
}

std::vector<Coeff> widen(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

EquivalenceReport compare_presentations(const Group& a, const Group& b,
                                        const GeneratorDictionary& a_to_b,
                                        const GeneratorDictionary& b_to_a, int n_max,
                                        int ball_radius, int c_max, const ARPairOptions& opts) {
  EquivalenceReport rep;
  rep.spot_checks = spot_check(a, b, a_to_b, b_to_a) + spot_check(b, a, b_to_a, a_to_b);
  rep.a = measure_ar_pair(a.backend, a.pres, n_max, ball_radius, opts);
  rep.b = measure_ar_pair(b.backend, b.pres, n_max, ball_radius, opts);
  rep.f_a_below_b = check_preceq(rep.a.f_table, rep.b.f_table, c_max);
  rep.f_b_below_a = check_preceq(rep.b.f_table, rep.a.f_table, c_max);
  rep.g_equiv = check_affine_equiv(widen(rep.a.g_table), widen(rep.b.g_table), c_max);
  rep.holds = rep.f_a_below_b.holds && rep.f_b_below_a.holds && rep.g_equiv.holds;
  return rep;
}

}  // namespace homfill
