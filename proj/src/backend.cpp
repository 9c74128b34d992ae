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

#include "homfill/backend.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "homfill/error.hpp"

namespace homfill {

std::string to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::kFree: return "free";
    case BackendKind::kFreeAbelian: return "free_abelian";
    case BackendKind::kDirectTable: return "direct_table";
    case BackendKind::kExtension: return "extension";
  }
  return "?";
}

struct GroupBackend::Impl {
  BackendKind kind = BackendKind::kFree;
  int rank = 0;
  // Expansion of each generator into undefined generators.
  std::vector<std::optional<Word>> expansion;

  // direct_table
  std::vector<std::vector<int>> mult;  // mult[element][letter slot]
  std::vector<Word> element_words;
  int identity = 0;

  // extension
  std::shared_ptr<GroupBackend> kernel;
  std::vector<AutLift> lifts;
  int kernel_rank = 0;

  void check_letters(std::span<const Letter> w) const {
    for (Letter l : w)
      if (l == 0 || generator_of(l) >= rank)
        throw InputError("letter outside the backend's alphabet (rank " +
                         std::to_string(rank) + ")");
  }

  Word expand(std::span<const Letter> w) const {
    check_letters(w);
    Word out;
    out.reserve(w.size());
    for (Letter l : w) {
      const auto& e = expansion[static_cast<std::size_t>(generator_of(l))];
      if (!e) {
        out.push_back(l);
      } else if (is_inverse(l)) {
        for (auto it = e->rbegin(); it != e->rend(); ++it) out.push_back(-*it);
      } else {
        out.insert(out.end(), e->begin(), e->end());
      }
    }
    return out;
  }

  static int slot(Letter l) { return 2 * generator_of(l) + (l < 0 ? 1 : 0); }

  Word normal_form(std::span<const Letter> w) const {
    switch (kind) {
      case BackendKind::kFree:
        return free_reduce(expand(w));
      case BackendKind::kFreeAbelian: {
        std::vector<long long> exps(static_cast<std::size_t>(rank), 0);
        for (Letter l : expand(w))
          exps[static_cast<std::size_t>(generator_of(l))] += l > 0 ? 1 : -1;
        Word out;
        for (int g = 0; g < rank; ++g) {
          long long e = exps[static_cast<std::size_t>(g)];
          for (long long i = 0; i < (e < 0 ? -e : e); ++i)
            out.push_back(make_letter(g, e < 0));
        }
        return out;
      }
      case BackendKind::kDirectTable: {
        int x = identity;
        for (Letter l : expand(w))
          x = mult[static_cast<std::size_t>(x)][static_cast<std::size_t>(slot(l))];
        return element_words[static_cast<std::size_t>(x)];
      }
      case BackendKind::kExtension: {
        ExtensionNormalForm nf = split(w);
        Word out = std::move(nf.k_part);
        for (Letter l : nf.t_part)
          out.push_back(make_letter(kernel_rank + generator_of(l), is_inverse(l)));
        return out;
      }
    }
    return {};
  }

  // Pushes stable letters to the right: t a -> Psi(a) t, t^-1 a -> Phi(a) t^-1.
  ExtensionNormalForm split(std::span<const Letter> w) const {
    check_letters(w);
    Word k;
    Word t;
    for (Letter l : w) {
      const int g = generator_of(l);
      if (g >= kernel_rank) {
        t.push_back(make_letter(g - kernel_rank, is_inverse(l)));
        if (t.size() >= 2 && t[t.size() - 2] == -t.back()) t.resize(t.size() - 2);
        continue;
      }
      // Conjugate the letter through the current t-word, innermost first.
      Word v{l};
      for (auto it = t.rbegin(); it != t.rend(); ++it) {
        const AutLift& lift = lifts[static_cast<std::size_t>(generator_of(*it))];
        v = kernel->normal_form(apply_lift(
            lift, is_inverse(*it) ? LiftDirection::kForward : LiftDirection::kBackward,
            v));
      }
      k.insert(k.end(), v.begin(), v.end());
      k = kernel->normal_form(k);
    }
    return {kernel->normal_form(k), std::move(t)};
  }
};

namespace {

std::vector<std::optional<Word>> build_expansion(
    int rank, const std::vector<std::pair<int, Word>>& definitions) {
  std::vector<std::optional<Word>> exp(static_cast<std::size_t>(rank));
  for (const auto& [g, w] : definitions) {
    if (g < 0 || g >= rank) throw InputError("definition of unknown generator");
    if (exp[static_cast<std::size_t>(g)])
      throw InputError("generator defined twice");
    Word flat;
    for (Letter l : w) {
      if (l == 0 || generator_of(l) >= rank)
        throw InputError("definition letter out of range");
      if (generator_of(l) == g)
        throw InputError("generator defined in terms of itself");
      const auto& inner = exp[static_cast<std::size_t>(generator_of(l))];
      if (inner) {
        Word piece = is_inverse(l) ? inverse_word(*inner) : *inner;
        flat.insert(flat.end(), piece.begin(), piece.end());
      } else {
        bool later = std::any_of(definitions.begin(), definitions.end(),
                                 [&](const auto& d) { return d.first == generator_of(l); });
        if (later)
          throw InputError("definitions must only use earlier definitions");
        flat.push_back(l);
      }
    }
    exp[static_cast<std::size_t>(g)] = std::move(flat);
  }
  return exp;
}

}  // namespace

GroupBackend GroupBackend::free(int rank,
                                std::vector<std::pair<int, Word>> definitions) {
  auto impl = std::make_shared<Impl>();
  impl->kind = BackendKind::kFree;
  impl->rank = rank;
  impl->expansion = build_expansion(rank, definitions);
  GroupBackend b;
  b.impl_ = std::move(impl);
  return b;
}

GroupBackend GroupBackend::free_abelian(
    int rank, std::vector<std::pair<int, Word>> definitions) {
  auto impl = std::make_shared<Impl>();
  impl->kind = BackendKind::kFreeAbelian;
  impl->rank = rank;
  impl->expansion = build_expansion(rank, definitions);
  GroupBackend b;
  b.impl_ = std::move(impl);
  return b;
}

GroupBackend GroupBackend::direct_table(
    int rank, const std::vector<std::pair<int, std::vector<int>>>& perms,
    std::vector<std::pair<int, Word>> definitions) {
  constexpr std::size_t kMaxOrder = 100000;
  auto impl = std::make_shared<Impl>();
  impl->kind = BackendKind::kDirectTable;
  impl->rank = rank;
  impl->expansion = build_expansion(rank, definitions);

  std::vector<std::optional<std::vector<int>>> gen_perm(static_cast<std::size_t>(rank));
  std::size_t degree = 0;
  for (const auto& [g, p] : perms) {
    if (g < 0 || g >= rank) throw InputError("perm for unknown generator");
    if (gen_perm[static_cast<std::size_t>(g)]) throw InputError("perm given twice");
    if (degree == 0) degree = p.size();
    if (p.size() != degree || degree == 0)
      throw InputError("all permutations must have the same nonzero degree");
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < degree; ++i)
      if (sorted[i] != static_cast<int>(i))
        throw InputError("perm images must be a permutation of 0..n-1");
    gen_perm[static_cast<std::size_t>(g)] = p;
  }
  for (int g = 0; g < rank; ++g)
    if (!gen_perm[static_cast<std::size_t>(g)] && !impl->expansion[static_cast<std::size_t>(g)])
      throw InputError("direct_table needs a perm or definition for every generator");

  // Letter slots 2g (x) and 2g+1 (x^-1); defined generators get their slot
  // filled by evaluating the expansion.
  std::vector<std::vector<int>> slot_perm(static_cast<std::size_t>(2 * rank));
  auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(degree);
    for (std::size_t i = 0; i < degree; ++i)
      r[i] = q[static_cast<std::size_t>(p[i])];
    return r;
  };
  auto invert = [&](const std::vector<int>& p) {
    std::vector<int> r(degree);
    for (std::size_t i = 0; i < degree; ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return r;
  };
  std::vector<int> id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<int>(i);
  for (int g = 0; g < rank; ++g) {
    auto s = static_cast<std::size_t>(g);
    if (gen_perm[s]) {
      slot_perm[2 * s] = *gen_perm[s];
    } else {
      std::vector<int> p = id;
      for (Letter l : *impl->expansion[s]) {
        const auto& base = *gen_perm[static_cast<std::size_t>(generator_of(l))];
        p = compose(p, is_inverse(l) ? invert(base) : base);
      }
      slot_perm[2 * s] = p;
    }
    slot_perm[2 * s + 1] = invert(slot_perm[2 * s]);
  }

  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> elems;
  index[id] = 0;
  elems.push_back(id);
  impl->element_words.push_back({});
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int g = 0; g < rank; ++g) {
      if (impl->expansion[static_cast<std::size_t>(g)]) continue;
      for (int inv = 0; inv < 2; ++inv) {
        auto next = compose(elems[static_cast<std::size_t>(x)],
                            slot_perm[static_cast<std::size_t>(2 * g + inv)]);
        if (index.count(next)) continue;
        if (elems.size() >= kMaxOrder)
          throw ResourceError("direct_table group larger than 100000 elements");
        index[next] = static_cast<int>(elems.size());
        Word w = impl->element_words[static_cast<std::size_t>(x)];
        w.push_back(make_letter(g, inv == 1));
        impl->element_words.push_back(std::move(w));
        elems.push_back(std::move(next));
        queue.push_back(static_cast<int>(elems.size()) - 1);
      }
    }
  }
  impl->mult.assign(elems.size(), std::vector<int>(static_cast<std::size_t>(2 * rank)));
  for (std::size_t x = 0; x < elems.size(); ++x)
    for (std::size_t s = 0; s < slot_perm.size(); ++s)
      impl->mult[x][s] = index.at(compose(elems[x], slot_perm[s]));
  impl->identity = 0;
  GroupBackend b;
  b.impl_ = std::move(impl);
  return b;
}

GroupBackend GroupBackend::extension(GroupBackend kernel, std::vector<AutLift> lifts) {
  if (kernel.kind() == BackendKind::kExtension)
    throw InputError("nested extension backends are not supported");
  for (const AutLift& lift : lifts) {
    if (static_cast<int>(lift.forward.size()) != kernel.rank() ||
        static_cast<int>(lift.backward.size()) != kernel.rank())
      throw InputError("lift " + lift.stable_letter + " has the wrong number of images");
    if (auto bad = find_lift_inverse_violation(lift, kernel.normal_form_fn()))
      throw InputError("lift " + lift.stable_letter +
                       " is not invertible on generator " + std::to_string(*bad));
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = BackendKind::kExtension;
  impl->kernel_rank = kernel.rank();
  impl->rank = kernel.rank() + static_cast<int>(lifts.size());
  impl->expansion.assign(static_cast<std::size_t>(impl->rank), std::nullopt);
  impl->kernel = std::make_shared<GroupBackend>(std::move(kernel));
  impl->lifts = std::move(lifts);
  GroupBackend b;
  b.impl_ = std::move(impl);
  return b;
}

BackendKind GroupBackend::kind() const { return impl_->kind; }
int GroupBackend::rank() const { return impl_->rank; }

Word GroupBackend::normal_form(std::span<const Letter> w) const {
  return impl_->normal_form(w);
}

bool GroupBackend::equal_in_group(std::span<const Letter> u,
                                  std::span<const Letter> v) const {
  return normal_form(u) == normal_form(v);
}

int GroupBackend::kernel_rank() const {
  if (impl_->kind != BackendKind::kExtension)
    throw InvariantError("kernel_rank on a non-extension backend");
  return impl_->kernel_rank;
}

const GroupBackend& GroupBackend::kernel() const {
  if (impl_->kind != BackendKind::kExtension)
    throw InvariantError("kernel() on a non-extension backend");
  return *impl_->kernel;
}

const std::vector<AutLift>& GroupBackend::lifts() const {
  if (impl_->kind != BackendKind::kExtension)
    throw InvariantError("lifts() on a non-extension backend");
  return impl_->lifts;
}

ExtensionNormalForm GroupBackend::split(std::span<const Letter> w) const {
  if (impl_->kind != BackendKind::kExtension)
    throw InvariantError("split() on a non-extension backend");
  return impl_->split(w);
}

Word GroupBackend::coset_of(std::span<const Letter> w) const {
  if (impl_->kind != BackendKind::kExtension) return {};
  // Normal forms end with the t-part; scanning the tail avoids re-normalising.
  Word t;
  for (Letter l : w)
    if (generator_of(l) >= impl_->kernel_rank)
      t.push_back(make_letter(generator_of(l) - impl_->kernel_rank, is_inverse(l)));
  return free_reduce(t);
}

NormalFormFn GroupBackend::normal_form_fn() const {
  auto impl = impl_;
  return [impl](std::span<const Letter> w) { return impl->normal_form(w); };
}

std::vector<Word> enumerate_ball_vertices(const GroupBackend& backend,
                                          const Presentation& pres, int radius,
                                          std::size_t vertex_budget) {
  if (radius < 0) throw InputError("radius must be non-negative");
  if (pres.rank() != backend.rank())
    throw InputError("presentation and backend disagree on the alphabet");
  std::vector<Word> order{backend.normal_form(Word{})};
  std::unordered_map<Word, int, WordHash> seen{{order[0], 0}};
  std::size_t frontier_begin = 0;
  for (int r = 0; r < radius; ++r) {
    std::size_t frontier_end = order.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (int g = 0; g < pres.rank(); ++g) {
        for (int inv = 0; inv < 2; ++inv) {
          Word w = order[i];
          w.push_back(make_letter(g, inv == 1));
          Word nf = backend.normal_form(w);
          if (seen.count(nf)) continue;
          if (order.size() >= vertex_budget)
            throw ResourceError("ball of radius " + std::to_string(radius) +
                                " exceeds the vertex budget of " +
                                std::to_string(vertex_budget) +
                                " (set HOMFILL_BUDGET_VERTICES to raise it)");
          seen.emplace(nf, static_cast<int>(order.size()));
          order.push_back(std::move(nf));
        }
      }
    }
    frontier_begin = frontier_end;
  }
  return order;
}

Group make_group(const GroupFile& file) {
  const Presentation& p = file.presentation;
  auto make_plain = [&](const std::string& kind) {
    if (kind == "free") return GroupBackend::free(p.rank(), file.definitions);
    if (kind == "free_abelian")
      return GroupBackend::free_abelian(p.rank(), file.definitions);
    if (kind == "direct_table")
      return GroupBackend::direct_table(p.rank(), file.perms, file.definitions);
    throw InputError("unsupported backend '" + kind + "'");
  };
  auto check_relators = [](const Presentation& pres, const GroupBackend& b) {
    for (const Word& r : pres.relators())
      if (!b.normal_form(r).empty())
        throw InputError("relator '" + pres.format(r) +
                         "' is not trivial in the " + to_string(b.kind()) +
                         " backend");
  };
  Group g;
  if (file.backend == "extension") {
    GroupBackend k = make_plain(file.kernel);
    check_relators(p, k);
    HomPresentation kp = HomPresentation::all_marked(p);
    g.pres = build_extension_presentation(kp, file.lifts, k.normal_form_fn());
    g.backend = GroupBackend::extension(k, file.lifts);
    g.kernel_pres = std::move(kp);
    g.kernel_backend = std::move(k);
  } else {
    g.backend = make_plain(file.backend);
    g.pres = HomPresentation::all_marked(p);
  }
  check_relators(g.pres.base, g.backend);
  return g;
}

Group load_group(const std::string& path) { return make_group(load_group_file(path)); }

}  // namespace homfill
