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

#include "homfill/lp.hpp"

#include <gmpxx.h>

#include <limits>
#include <optional>

#include "homfill/error.hpp"

namespace homfill {

namespace {

struct Overflow {};

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    if (a <= std::numeric_limits<std::int64_t>::max() &&
        b <= std::numeric_limits<std::int64_t>::max()) {
      auto x = static_cast<std::int64_t>(a), y = static_cast<std::int64_t>(b);
      while (y != 0) {
        std::int64_t t = x % y;
        x = y;
        y = t;
      }
      return x;
    }
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// int64 fraction that throws Overflow instead of wrapping.
class Q64 {
 public:
  Q64() = default;
  Q64(std::int64_t v) : n_(v) {}  // NOLINT(runtime/explicit)

  static Q64 make(i128 n, i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Q64();
    if (d != 1) {
      i128 g = gcd128(n, d);
      n /= g;
      d /= g;
    }
    constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
    if (n > kMax || n < -kMax || d > kMax) throw Overflow{};
    Q64 q;
    q.n_ = static_cast<std::int64_t>(n);
    q.d_ = static_cast<std::int64_t>(d);
    return q;
  }

  std::int64_t num() const { return n_; }
  std::int64_t den() const { return d_; }
  int sign() const { return (n_ > 0) - (n_ < 0); }

  friend Q64 operator+(const Q64& a, const Q64& b) {
    if (a.d_ == 1 && b.d_ == 1) {
      std::int64_t r;
      if (__builtin_add_overflow(a.n_, b.n_, &r)) throw Overflow{};
      return Q64(r);
    }
    if (a.d_ == b.d_) return make(i128(a.n_) + b.n_, a.d_);
    return make(i128(a.n_) * b.d_ + i128(b.n_) * a.d_, i128(a.d_) * b.d_);
  }
  friend Q64 operator-(const Q64& a) {
    Q64 r = a;
    r.n_ = -r.n_;
    return r;
  }
  friend Q64 operator-(const Q64& a, const Q64& b) { return a + (-b); }
  friend Q64 operator*(const Q64& a, const Q64& b) {
    if (a.n_ == 0 || b.n_ == 0) return Q64();
    if (a.d_ == 1 && b.d_ == 1) {
      std::int64_t r;
      if (__builtin_mul_overflow(a.n_, b.n_, &r)) throw Overflow{};
      return Q64(r);
    }
    return make(i128(a.n_) * b.n_, i128(a.d_) * b.d_);
  }
  friend Q64 operator/(const Q64& a, const Q64& b) {
    if (b.n_ == 0) throw InvariantError("rational division by zero");
    return make(i128(a.n_) * b.d_, i128(a.d_) * b.n_);
  }
  Q64& operator-=(const Q64& o) { return *this = *this - o; }
  Q64& operator*=(const Q64& o) { return *this = *this * o; }
  friend bool operator==(const Q64& a, const Q64& b) = default;
  friend bool operator<(const Q64& a, const Q64& b) {
    return i128(a.n_) * b.d_ < i128(b.n_) * a.d_;
  }
  friend bool operator>(const Q64& a, const Q64& b) { return b < a; }

 private:
  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
};

int sign_of(const Q64& q) { return q.sign(); }
int sign_of(const mpq_class& q) { return sgn(q); }

std::int64_t floor_of(const Q64& q) {
  std::int64_t f = q.num() / q.den();
  if (q.num() % q.den() != 0 && q.num() < 0) --f;
  return f;
}
std::int64_t floor_of(const mpq_class& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!f.fits_slong_p()) throw ResourceError("LP value exceeds 64-bit range");
  return f.get_si();
}
bool is_integral(const Q64& q) { return q.den() == 1; }
bool is_integral(const mpq_class& q) { return q.get_den() == 1; }

std::string to_str(const Q64& q) {
  return q.den() == 1 ? std::to_string(q.num())
                      : std::to_string(q.num()) + "/" + std::to_string(q.den());
}
std::string to_str(const mpq_class& q) { return q.get_str(); }

template <class Num>
Num from_int(std::int64_t v) {
  if constexpr (std::is_same_v<Num, mpq_class>) {
    return mpq_class(mpz_class(std::to_string(v)));
  } else {
    return Num(v);
  }
}

// Dense row-major equality system.
struct Dense {
  int m = 0, n = 0;
  std::vector<std::int64_t> a, b, c;
};

template <class Num>
struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Num> x;
  Num objective;
};

template <class Num>
class Simplex {
 public:
  LpOutcome<Num> solve(const Dense& d) {
    m_ = d.m;
    const int n = d.n;
    width_ = n + m_ + 1;
    rhs_ = n + m_;
    t_.assign(static_cast<std::size_t>(m_ + 1) * width_, Num());
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      const bool neg = d.b[i] < 0;
      for (int j = 0; j < n; ++j) {
        auto v = d.a[static_cast<std::size_t>(i) * n + j];
        if (v != 0) at(i, j) = from_int<Num>(neg ? -v : v);
      }
      at(i, n + i) = from_int<Num>(1);
      at(i, rhs_) = from_int<Num>(neg ? -d.b[i] : d.b[i]);
      basis_[i] = n + i;
    }
    for (int j = 0; j < n; ++j) {
      Num s;
      for (int i = 0; i < m_; ++i) s -= at(i, j);
      at(m_, j) = s;
    }
    {
      Num s;
      for (int i = 0; i < m_; ++i) s -= at(i, rhs_);
      at(m_, rhs_) = s;
    }
    LpOutcome<Num> out;
    iterate(n + m_);
    if (sign_of(at(m_, rhs_)) != 0) return out;  // infeasible

    // Drive artificials out; rows where that fails are redundant.
    std::vector<int> keep;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n) {
        keep.push_back(i);
        continue;
      }
      int col = -1;
      for (int j = 0; j < n && col < 0; ++j)
        if (sign_of(at(i, j)) != 0) col = j;
      if (col >= 0) {
        pivot(i, col);
        keep.push_back(i);
      }
    }

    // Compact to the structural columns and kept rows.
    const int m2 = static_cast<int>(keep.size());
    std::vector<Num> t2(static_cast<std::size_t>(m2 + 1) * (n + 1));
    std::vector<int> basis2(m2);
    for (int k = 0; k < m2; ++k) {
      const int i = keep[k];
      for (int j = 0; j < n; ++j) t2[static_cast<std::size_t>(k) * (n + 1) + j] = at(i, j);
      t2[static_cast<std::size_t>(k) * (n + 1) + n] = at(i, rhs_);
      basis2[k] = basis_[i];
    }
    t_ = std::move(t2);
    basis_ = std::move(basis2);
    m_ = m2;
    width_ = n + 1;
    rhs_ = n;
    for (int j = 0; j <= n; ++j) {
      Num s = j < n ? from_int<Num>(d.c[j]) : Num();
      for (int i = 0; i < m_; ++i) {
        auto cb = d.c[basis_[i]];
        if (cb != 0 && sign_of(at(i, j)) != 0) s -= from_int<Num>(cb) * at(i, j);
      }
      at(m_, j) = s;
    }
    if (!iterate(n)) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
    out.status = LpStatus::kOptimal;
    out.x.assign(n, Num());
    for (int i = 0; i < m_; ++i) out.x[basis_[i]] = at(i, rhs_);
    out.objective = -at(m_, rhs_);
    return out;
  }

 private:
  Num& at(int i, int j) { return t_[static_cast<std::size_t>(i) * width_ + j]; }

  // Returns false on unboundedness. Columns >= ncols never enter.
  bool iterate(int ncols) {
    bool bland = false;
    int stall = 0;
    for (;;) {
      int s = -1;
      for (int j = 0; j < ncols; ++j) {
        if (sign_of(at(m_, j)) >= 0) continue;
        if (s < 0 || (!bland && at(m_, j) < at(m_, s))) s = j;
        if (bland) break;
      }
      if (s < 0) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (sign_of(at(i, s)) <= 0) continue;
        if (r < 0) {
          r = i;
          continue;
        }
        // ratio_i < ratio_r  <=>  rhs_i * a_rs < rhs_r * a_is
        Num lhs = at(i, rhs_) * at(r, s);
        Num rhs = at(r, rhs_) * at(i, s);
        if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[r])) r = i;
      }
      if (r < 0) return false;
      if (sign_of(at(r, rhs_)) == 0) {
        if (++stall > 50) bland = true;
      } else {
        stall = 0;
      }
      pivot(r, s);
    }
  }

  void pivot(int r, int s) {
    const Num inv = from_int<Num>(1) / at(r, s);
    nz_.clear();
    for (int j = 0; j < width_; ++j)
      if (sign_of(at(r, j)) != 0) {
        at(r, j) *= inv;
        nz_.push_back(j);
      }
    for (int i = 0; i <= m_; ++i) {
      if (i == r || sign_of(at(i, s)) == 0) continue;
      const Num f = at(i, s);
      for (int j : nz_) at(i, j) -= f * at(r, j);
    }
    basis_[r] = s;
  }

  int m_ = 0, width_ = 0, rhs_ = 0;
  std::vector<Num> t_;
  std::vector<int> basis_;
  std::vector<int> nz_;
};

Dense to_dense(const IlpProblem& p) {
  Dense d;
  d.m = p.rows;
  d.n = p.cols();
  d.a.assign(static_cast<std::size_t>(d.m) * d.n, 0);
  for (int j = 0; j < d.n; ++j)
    for (const auto& [i, v] : p.columns[j]) {
      if (i < 0 || i >= d.m) throw InvariantError("LP row index out of range");
      d.a[static_cast<std::size_t>(i) * d.n + j] += v;
    }
  d.b = p.rhs;
  d.c = p.cost;
  if (static_cast<int>(d.b.size()) != d.m || static_cast<int>(d.c.size()) != d.n)
    throw InvariantError("LP dimensions disagree");
  for (auto c : d.c)
    if (c < 0) throw InvariantError("LP costs must be non-negative");
  return d;
}

struct BoundRow {
  int var;
  bool upper;
  std::int64_t value;
};

// Appends x_var +/- s = value with a fresh slack column.
Dense with_bounds(const Dense& base, const std::vector<BoundRow>& bounds) {
  if (bounds.empty()) return base;
  Dense d;
  const int k = static_cast<int>(bounds.size());
  d.m = base.m + k;
  d.n = base.n + k;
  d.a.assign(static_cast<std::size_t>(d.m) * d.n, 0);
  for (int i = 0; i < base.m; ++i)
    for (int j = 0; j < base.n; ++j)
      d.a[static_cast<std::size_t>(i) * d.n + j] = base.a[static_cast<std::size_t>(i) * base.n + j];
  d.b = base.b;
  d.c = base.c;
  d.c.resize(d.n, 0);
  for (int t = 0; t < k; ++t) {
    const int row = base.m + t;
    d.a[static_cast<std::size_t>(row) * d.n + bounds[t].var] = 1;
    d.a[static_cast<std::size_t>(row) * d.n + base.n + t] = bounds[t].upper ? 1 : -1;
    d.b.push_back(bounds[t].value);
  }
  return d;
}

template <class Num>
class BranchAndBound {
 public:
  BranchAndBound(const Dense& base, long budget) : base_(base), budget_(budget) {}

  IlpResult run() {
    std::vector<BoundRow> bounds;
    dfs(bounds);
    IlpResult r;
    r.nodes = nodes_;
    if (budget_hit_) {
      r.status = IlpStatus::kBudgetExceeded;
    } else if (best_) {
      r.status = IlpStatus::kOptimal;
      r.x = *best_;
      r.objective = best_obj_;
    } else {
      r.status = IlpStatus::kInfeasible;
    }
    return r;
  }

 private:
  void dfs(std::vector<BoundRow>& bounds) {
    if (budget_hit_) return;
    if (nodes_ >= budget_) {
      budget_hit_ = true;
      return;
    }
    ++nodes_;
    Simplex<Num> lp;
    auto sol = lp.solve(with_bounds(base_, bounds));
    if (sol.status == LpStatus::kInfeasible) return;
    if (sol.status == LpStatus::kUnbounded)
      throw InvariantError("relaxation unbounded despite non-negative costs");
    // Integer points have integer cost, so the bound rounds up.
    const std::int64_t lower = -floor_of(-sol.objective);
    if (best_ && lower >= best_obj_) return;

    int branch = -1;
    Num best_score;
    const Num half = from_int<Num>(1) / from_int<Num>(2);
    for (int j = 0; j < base_.n; ++j) {
      const Num& v = sol.x[j];
      if (is_integral(v)) continue;
      Num frac = v - from_int<Num>(floor_of(v));
      Num dist = frac < half ? frac : from_int<Num>(1) - frac;
      if (branch < 0 || best_score < dist) {
        branch = j;
        best_score = dist;
      }
    }
    if (branch < 0) {
      std::vector<std::int64_t> x(base_.n);
      std::int64_t obj = 0;
      for (int j = 0; j < base_.n; ++j) {
        x[j] = floor_of(sol.x[j]);
        obj += x[j] * base_.c[j];
      }
      if (!best_ || obj < best_obj_) {
        best_ = std::move(x);
        best_obj_ = obj;
      }
      return;
    }
    const std::int64_t f = floor_of(sol.x[branch]);
    bounds.push_back({branch, true, f});
    dfs(bounds);
    bounds.back() = {branch, false, f + 1};
    dfs(bounds);
    bounds.pop_back();
  }

  const Dense& base_;
  long budget_;
  long nodes_ = 0;
  bool budget_hit_ = false;
  std::optional<std::vector<std::int64_t>> best_;
  std::int64_t best_obj_ = 0;
};

template <class Num>
LpSolution lp_to_strings(const LpOutcome<Num>& o) {
  LpSolution s;
  s.status = o.status;
  if (o.status != LpStatus::kOptimal) return s;
  for (const auto& v : o.x) s.x.push_back(to_str(v));
  s.objective = to_str(o.objective);
  return s;
}

}  // namespace

LpSolution solve_lp(const IlpProblem& p) {
  Dense d = to_dense(p);
  try {
    Simplex<Q64> lp;
    return lp_to_strings(lp.solve(d));
  } catch (const Overflow&) {
    Simplex<mpq_class> lp;
    return lp_to_strings(lp.solve(d));
  }
}

IlpResult solve_ilp(const IlpProblem& p, long node_budget) {
  if (node_budget <= 0) throw InputError("ILP node budget must be positive");
  Dense d = to_dense(p);
  try {
    return BranchAndBound<Q64>(d, node_budget).run();
  } catch (const Overflow&) {
    IlpResult r = BranchAndBound<mpq_class>(d, node_budget).run();
    r.used_bignum = true;
    return r;
  }
}

}  // namespace homfill
