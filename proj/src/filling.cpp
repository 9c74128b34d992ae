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

#include "homfill/filling.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "homfill/error.hpp"
#include "homfill/lp.hpp"

namespace homfill {

std::string to_string(Solver s) {
  return s == Solver::kExactIlp ? "exact_ilp" : "brute_force";
}

std::string to_string(FillStatus s) {
  switch (s) {
    case FillStatus::kOptimal:
      return "optimal";
    case FillStatus::kInfeasibleInBall:
      return "infeasible_in_ball";
    case FillStatus::kBudgetExceeded:
      return "budget_exceeded";
  }
  return "unknown";
}

std::string to_string(EnumerationScope s) {
  return s == EnumerationScope::kLoopsOnly ? "loops_only" : "loops_plus_superadditive";
}

namespace {

void require_cycle(const CayleyBall& ball, const OneCycle& gamma) {
  if (!is_cycle(ball, gamma))
    throw InputError("query chain is not a 1-cycle on the ball's edges");
}

FillingResult fill_ilp(const CayleyBall& ball, const OneCycle& gamma, const FillOptions& opts) {
  FillingResult res;
  res.ball_radius = ball.radius();

  // Rows: edges touched by some cell, plus any edge of gamma.
  std::map<EdgeId, int> row_of;
  for (const Cell& c : ball.cells())
    for (const auto& [e, k] : c.boundary) row_of.emplace(e, 0);
  for (const auto& [e, k] : gamma)
    if (!row_of.count(e)) {
      res.status = FillStatus::kInfeasibleInBall;
      return res;
    }
  int next = 0;
  for (auto& [e, r] : row_of) r = next++;

  IlpProblem p;
  p.rows = next;
  p.rhs.assign(static_cast<std::size_t>(next), 0);
  for (const auto& [e, k] : gamma) p.rhs[static_cast<std::size_t>(row_of[e])] = k;
  for (const Cell& c : ball.cells()) {
    std::vector<std::pair<int, std::int64_t>> pos, neg;
    for (const auto& [e, k] : c.boundary) {
      pos.emplace_back(row_of[e], k);
      neg.emplace_back(row_of[e], -k);
    }
    p.columns.push_back(std::move(pos));
    p.columns.push_back(std::move(neg));
    p.cost.push_back(1);
    p.cost.push_back(1);
  }
  IlpResult r = solve_ilp(p, opts.node_budget);
  res.work = r.nodes;
  switch (r.status) {
    case IlpStatus::kInfeasible:
      res.status = FillStatus::kInfeasibleInBall;
      return res;
    case IlpStatus::kBudgetExceeded:
      res.status = FillStatus::kBudgetExceeded;
      return res;
    case IlpStatus::kOptimal:
      break;
  }
  for (std::size_t j = 0; j < ball.cell_count(); ++j)
    res.chain.add(static_cast<CellId>(j), r.x[2 * j] - r.x[2 * j + 1]);
  res.area = res.chain.l1();
  res.status = FillStatus::kOptimal;
  return res;
}

// Depth-first search over unit additions. Each unit is chosen among cells
// on the lowest-index edge still carrying residual, in the direction that
// shrinks that residual; every filling of area A is reachable in A steps.
class BruteForce {
 public:
  BruteForce(const CayleyBall& ball, const OneCycle& gamma, const FillOptions& opts)
      : ball_(ball), opts_(opts) {
    bound_ = opts.coefficient_bound.value_or(std::max<Coeff>(1, gamma.max_abs()));
    for (const Cell& c : ball.cells()) max_len_ = std::max(max_len_, c.boundary.l1());
    residual_ = gamma;
  }

  // Searches area exactly `area`; collects up to `limit` chains.
  // Returns false when the budget ran out.
  bool search(Coeff area, std::size_t limit) {
    limit_ = limit;
    return dfs(area);
  }

  const std::vector<TwoChain>& found() const { return found_; }
  long nodes() const { return nodes_; }

 private:
  bool dfs(Coeff remaining) {
    if (++nodes_ > opts_.enumeration_budget) return false;
    if (residual_.empty()) {
      if (remaining == 0 && !seen_.count(chain_.terms())) {
        seen_.insert(chain_.terms());
        found_.push_back(chain_);
      }
      return true;
    }
    if (remaining == 0 || max_len_ == 0) return true;
    if ((residual_.l1() + max_len_ - 1) / max_len_ > remaining) return true;
    const auto [edge, r] = *residual_.begin();
    for (CellId c : ball_.cells_on_edge(edge)) {
      const Coeff b = ball_.cell(c).boundary.get(edge);
      for (int s : {1, -1}) {
        if (s * b * r <= 0) continue;
        const Coeff cur = chain_.get(c);
        if (cur * s < 0) continue;
        if ((cur < 0 ? -cur : cur) + 1 > bound_) continue;
        chain_.add(c, s);
        residual_.add(ball_.cell(c).boundary, -s);
        bool ok = dfs(remaining - 1);
        residual_.add(ball_.cell(c).boundary, s);
        chain_.add(c, -s);
        if (!ok) return false;
        if (found_.size() >= limit_) return true;
      }
    }
    return true;
  }

  const CayleyBall& ball_;
  const FillOptions& opts_;
  Coeff bound_ = 1;
  Coeff max_len_ = 0;
  OneCycle residual_;
  TwoChain chain_;
  std::vector<TwoChain> found_;
  std::set<TwoChain::Map> seen_;
  std::size_t limit_ = 1;
  long nodes_ = 0;
};

Coeff default_area_cap(const OneCycle& gamma) {
  const Coeff n = gamma.l1();
  return std::max<Coeff>(1, n * n);
}

FillingResult fill_brute(const CayleyBall& ball, const OneCycle& gamma, const FillOptions& opts) {
  FillingResult res;
  res.ball_radius = ball.radius();
  for (const auto& [e, k] : gamma)
    if (ball.cells_on_edge(e).empty()) {
      res.status = FillStatus::kInfeasibleInBall;
      return res;
    }
  const Coeff cap = opts.area_cap.value_or(default_area_cap(gamma));
  BruteForce bf(ball, gamma, opts);
  for (Coeff a = 1; a <= cap; ++a) {
    if (!bf.search(a, 1)) {
      res.work = bf.nodes();
      res.status = FillStatus::kBudgetExceeded;
      return res;
    }
    if (!bf.found().empty()) {
      res.work = bf.nodes();
      res.chain = bf.found().front();
      res.area = res.chain.l1();
      res.status = FillStatus::kOptimal;
      return res;
    }
  }
  res.work = bf.nodes();
  res.status = FillStatus::kBudgetExceeded;
  return res;
}

}  // namespace

FillingResult harea_fill(const CayleyBall& ball, const OneCycle& gamma, const FillOptions& opts) {
  require_cycle(ball, gamma);
  if (gamma.empty()) {
    FillingResult r;
    r.ball_radius = ball.radius();
    return r;
  }
  FillingResult r = opts.solver == Solver::kExactIlp ? fill_ilp(ball, gamma, opts)
                                                     : fill_brute(ball, gamma, opts);
  if (r.status == FillStatus::kOptimal && boundary_2(ball, r.chain) != gamma)
    throw InvariantError("solver returned a chain whose boundary is not the query cycle");
  return r;
}

std::vector<TwoChain> enumerate_fillings(const CayleyBall& ball, const OneCycle& gamma,
                                         Coeff area, const FillOptions& opts,
                                         std::size_t limit) {
  require_cycle(ball, gamma);
  if (gamma.empty()) return {TwoChain{}};
  BruteForce bf(ball, gamma, opts);
  if (!bf.search(area, limit))
    throw ResourceError("filling enumeration exceeded its budget of " +
                        std::to_string(opts.enumeration_budget) + " nodes");
  return bf.found();
}

namespace {

// Closed reduced, cyclically reduced words at `base` in least rotation.
std::vector<Loop> loops_at(const CayleyBall& ball, VertexId base, int max_length) {
  const int rank = ball.presentation().base.rank();
  std::vector<Loop> raw;
  Word w;
  std::vector<VertexId> at{base};
  // Distance back to the base is bounded by the triangle inequality through
  // the identity, which is what depth() measures.
  const int base_depth = ball.depth(base);
  auto rec = [&](auto&& self) -> void {
    const VertexId v = at.back();
    const int len = static_cast<int>(w.size());
    if (len > 0 && v == base && w.front() != -w.back() && min_rotation(w) == w)
      raw.push_back({w, {}});
    if (len == max_length) return;
    for (int g = 0; g < rank; ++g)
      for (bool inv : {false, true}) {
        const Letter l = make_letter(g, inv);
        if (len > 0 && w.back() == -l) continue;
        auto s = ball.step(v, l);
        if (!s) continue;
        const int lower = std::abs(ball.depth(s->to) - base_depth);
        if (lower > max_length - len - 1) continue;
        w.push_back(l);
        at.push_back(s->to);
        self(self);
        w.pop_back();
        at.pop_back();
      }
  };
  rec(rec);
  for (Loop& l : raw) l.cycle = trace_path(ball, base, l.word).chain;
  std::erase_if(raw, [](const Loop& l) { return l.cycle.empty(); });
  return raw;
}

TwoChain::Map sign_normalized(const OneCycle& c) {
  auto key = c.terms();
  if (!key.empty() && key.begin()->second < 0)
    for (auto& [e, k] : key) k = -k;
  return key;
}

}  // namespace

std::vector<Loop> enumerate_loops(const CayleyBall& ball, int max_length) {
  std::vector<Loop> raw = loops_at(ball, ball.identity(), max_length);
  std::stable_sort(raw.begin(), raw.end(), [](const Loop& a, const Loop& b) {
    const Coeff la = a.cycle.l1(), lb = b.cycle.l1();
    if (la != lb) return la < lb;
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return shortlex_less(a.word, b.word);
  });
  std::vector<Loop> out;
  std::set<TwoChain::Map> seen;
  for (Loop& l : raw)
    if (seen.insert(sign_normalized(l.cycle)).second) out.push_back(std::move(l));
  return out;
}

std::vector<OneCycle> enumerate_cycles(const CayleyBall& ball, int max_length) {
  // Signed distinct loops with their word lengths.
  std::map<TwoChain::Map, Coeff> loop_len;
  for (std::size_t v = 0; v < ball.vertex_count(); ++v)
    for (Loop& l : loops_at(ball, static_cast<VertexId>(v), max_length)) {
      const auto len = static_cast<Coeff>(l.word.size());
      for (int s : {1, -1}) {
        auto key = l.cycle.scaled(s).terms();
        auto [it, fresh] = loop_len.emplace(key, len);
        if (!fresh) it->second = std::min(it->second, len);
      }
    }
  std::vector<std::pair<OneCycle, Coeff>> loops;
  for (const auto& [key, len] : loop_len) {
    OneCycle c;
    for (const auto& [e, k] : key) c.add(e, k);
    loops.emplace_back(std::move(c), len);
  }
  std::set<TwoChain::Map> seen;
  OneCycle acc;
  auto rec = [&](auto&& self, std::size_t from, Coeff budget) -> void {
    for (std::size_t i = from; i < loops.size(); ++i) {
      if (loops[i].second > budget) continue;
      acc.add(loops[i].first);
      if (!acc.empty()) seen.insert(acc.terms());
      self(self, i, budget - loops[i].second);
      acc.add(loops[i].first, -1);
    }
  };
  rec(rec, 0, max_length);
  std::vector<OneCycle> out;
  for (const auto& key : seen) {
    OneCycle c;
    for (const auto& [e, k] : key) c.add(e, k);
    if (c.l1() <= max_length) out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const OneCycle& a, const OneCycle& b) { return a.l1() < b.l1(); });
  return out;
}

std::vector<Coeff> FATable::as_array() const {
  std::vector<Coeff> out;
  for (const auto& e : values) out.push_back(e.value);
  return out;
}

FATable fa_estimate(const CayleyBall& ball, int n_max, EnumerationScope scope,
                    const FillOptions& opts) {
  if (n_max < 1) throw InputError("n_max must be at least 1");
  std::vector<Loop> loops = enumerate_loops(ball, n_max);
  std::vector<FillingResult> fills(loops.size());
  const int threads = std::max(1, opts.threads);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < loops.size();)
      fills[i] = harea_fill(ball, loops[i].cycle, opts);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  FATable table;
  table.ball_radius = ball.radius();
  table.scope = scope;
  table.values.assign(static_cast<std::size_t>(n_max) + 1, FAEntry{});
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const auto n = static_cast<std::size_t>(loops[i].cycle.l1());
    FAEntry& e = table.values[n];
    ++e.cycles_examined;
    if (fills[i].status != FillStatus::kOptimal) {
      ++e.gaps;
      continue;
    }
    if (!e.witness || fills[i].area > e.value) {
      e.value = fills[i].area;
      e.witness = loops[i].word;
    }
  }
  for (std::size_t n = 1; n < table.values.size(); ++n) {
    FAEntry& cur = table.values[n];
    const FAEntry& prev = table.values[n - 1];
    cur.cycles_examined += prev.cycles_examined;
    cur.gaps += prev.gaps;
    if (prev.value > cur.value || (!cur.witness && prev.witness)) {
      cur.value = prev.value;
      cur.witness = prev.witness;
    }
  }
  if (scope == EnumerationScope::kLoopsPlusSuperadditive) {
    auto closed = superadditive_closure(table.as_array());
    for (std::size_t n = 0; n < closed.size(); ++n)
      if (closed[n] != table.values[n].value) {
        table.values[n].value = closed[n];
        table.values[n].witness.reset();
      }
  }
  return table;
}

FATable fa_estimate(const GroupBackend& backend, const HomPresentation& pres, int n_max,
                    int ball_radius, EnumerationScope scope, const FillOptions& opts) {
  return fa_estimate(CayleyBall::build(backend, pres, ball_radius), n_max, scope, opts);
}

std::vector<Coeff> superadditive_closure(const std::vector<Coeff>& f) {
  std::vector<Coeff> out(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) {
    out[n] = f[n];
    for (std::size_t k = 1; k < n; ++k) out[n] = std::max(out[n], out[k] + out[n - k]);
  }
  return out;
}

namespace {

template <class Pred>
RelationCheck scan_constants(int range, int c_max, Pred&& pred) {
  // pred(C, n) -> optional<bool>: nullopt when the sample is not checkable.
  RelationCheck out;
  const int samples = range;
  for (int c = 1; c <= c_max; ++c) {
    int checked = 0, skipped = 0;
    bool ok = true;
    for (int n = 1; n <= range && ok; ++n) {
      auto r = pred(c, n);
      if (!r) {
        ++skipped;
        continue;
      }
      ++checked;
      ok = *r;
    }
    if (!ok) continue;
    if (2 * checked < samples) continue;
    out.holds = true;
    out.constant = c;
    out.checked = checked;
    out.skipped = skipped;
    return out;
  }
  return out;
}

}  // namespace

RelationCheck check_preceq(const std::vector<Coeff>& f, const std::vector<Coeff>& g,
                           int c_max) {
  if (f.size() != g.size() || f.size() < 2)
    throw InputError("compared tables must share a range 0..N with N >= 1");
  const int range = static_cast<int>(f.size()) - 1;
  const auto gbar = superadditive_closure(g);
  return scan_constants(range, c_max, [&](int c, int n) -> std::optional<bool> {
    const long arg = static_cast<long>(c) * n + c;
    if (arg > range) return std::nullopt;
    return f[static_cast<std::size_t>(n)] <= c * gbar[static_cast<std::size_t>(arg)] + arg;
  });
}

RelationCheck check_affine_equiv(const std::vector<Coeff>& f, const std::vector<Coeff>& g,
                                 int c_max) {
  if (f.size() != g.size() || f.size() < 2)
    throw InputError("compared tables must share a range 0..N with N >= 1");
  const int range = static_cast<int>(f.size()) - 1;
  return scan_constants(range, c_max, [&](int c, int n) -> std::optional<bool> {
    const long arg = static_cast<long>(c) * n;
    if (arg > range) return std::nullopt;
    const auto a = static_cast<std::size_t>(arg), m = static_cast<std::size_t>(n);
    return f[m] <= c * g[a] + c && g[m] <= c * f[a] + c;
  });
}

int default_slack(const Presentation& p) { return (p.rho() + 1) / 2 + 2; }

}  // namespace homfill
