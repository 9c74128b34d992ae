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

#include "homfill/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "homfill/error.hpp"

namespace homfill {

Presentation::Presentation(std::vector<std::string> generators,
                           std::vector<Word> relators)
    : generators_(std::move(generators)) {
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (g.empty()) throw InputError("empty generator name");
    if (!seen.insert(g).second)
      throw InputError("duplicate generator name '" + g + "'");
  }
  for (const Word& r : relators) {
    for (Letter l : r)
      if (l == 0 || generator_of(l) >= rank())
        throw InputError("relator letter out of generator range");
    Word c = cyclic_reduce(r);
    if (c.empty())
      throw InputError("relator '" + format(r) + "' is freely trivial");
    relators_.push_back(std::move(c));
  }
}

int Presentation::rho() const {
  std::size_t m = 0;
  for (const Word& r : relators_) m = std::max(m, r.size());
  return static_cast<int>(m);
}

std::optional<int> Presentation::find_generator(std::string_view name) const {
  for (int i = 0; i < rank(); ++i)
    if (generators_[static_cast<std::size_t>(i)] == name) return i;
  return std::nullopt;
}

namespace {

std::string swap_case(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    auto u = static_cast<unsigned char>(c);
    c = std::isupper(u) ? static_cast<char>(std::tolower(u))
                        : static_cast<char>(std::toupper(u));
  }
  return out;
}

}  // namespace

Word Presentation::parse_word(std::string_view text) const {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    std::string_view tok = text.substr(start, i - start);
    if (tok == "1" || tok == "e") continue;  // explicit identity
    bool inv = false;
    if (tok.back() == '\'') {
      inv = true;
      tok.remove_suffix(1);
    }
    auto g = find_generator(tok);
    if (!g && !inv) {
      // Case-swapped alias for the inverse, only when unambiguous.
      std::string alt = swap_case(tok);
      if (alt != tok && std::isupper(static_cast<unsigned char>(tok[0]))) {
        g = find_generator(alt);
        inv = g.has_value();
      }
    }
    if (!g)
      throw InputError("unknown letter '" + std::string(text.substr(start, i - start)) +
                       "' at column " + std::to_string(start + 1));
    w.push_back(make_letter(*g, inv));
  }
  return w;
}

std::string Presentation::format(std::span<const Letter> w) const {
  std::string out;
  for (Letter l : w) {
    if (!out.empty()) out += ' ';
    auto g = static_cast<std::size_t>(generator_of(l));
    out += g < generators_.size() ? generators_[g] : "?" + std::to_string(g);
    if (is_inverse(l)) out += '\'';
  }
  return out;
}

HomPresentation HomPresentation::all_marked(Presentation p) {
  HomPresentation h;
  h.marked_relators.resize(p.relators().size());
  for (std::size_t i = 0; i < h.marked_relators.size(); ++i)
    h.marked_relators[i] = static_cast<int>(i);
  h.base = std::move(p);
  return h;
}

AutLift AutLift::identity(int rank, std::string name, int stable_index) {
  AutLift lift;
  lift.stable_letter = std::move(name);
  lift.stable_letter_index = stable_index;
  for (int g = 0; g < rank; ++g) {
    lift.forward.push_back({make_letter(g)});
    lift.backward.push_back({make_letter(g)});
  }
  return lift;
}

Word apply_lift_unreduced(const AutLift& lift, LiftDirection direction,
                          std::span<const Letter> w) {
  const auto& images =
      direction == LiftDirection::kForward ? lift.forward : lift.backward;
  Word out;
  for (Letter l : w) {
    if (l == 0 || generator_of(l) >= static_cast<int>(images.size()))
      throw InputError("letter outside the lift's generator range");
    const Word& img = images[static_cast<std::size_t>(generator_of(l))];
    if (is_inverse(l)) {
      for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(-*it);
    } else {
      out.insert(out.end(), img.begin(), img.end());
    }
  }
  return out;
}

Word apply_lift(const AutLift& lift, LiftDirection direction,
                std::span<const Letter> w) {
  return free_reduce(apply_lift_unreduced(lift, direction, w));
}

std::optional<int> find_lift_inverse_violation(const AutLift& lift,
                                               const NormalFormFn& k_normal) {
  const int rank = static_cast<int>(lift.forward.size());
  if (static_cast<int>(lift.backward.size()) != rank) return 0;
  for (int g = 0; g < rank; ++g) {
    const Word a{make_letter(g)};
    const Word target = k_normal(a);
    Word fb = apply_lift(lift, LiftDirection::kForward,
                         apply_lift(lift, LiftDirection::kBackward, a));
    Word bf = apply_lift(lift, LiftDirection::kBackward,
                         apply_lift(lift, LiftDirection::kForward, a));
    if (k_normal(fb) != target || k_normal(bf) != target) return g;
  }
  return std::nullopt;
}

HomPresentation build_extension_presentation(const HomPresentation& k_pres,
                                             const std::vector<AutLift>& lifts,
                                             const NormalFormFn& k_normal) {
  const Presentation& k = k_pres.base;
  const int rank = k.rank();
  std::vector<std::string> gens = k.generators();
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    const AutLift& lift = lifts[i];
    if (static_cast<int>(lift.forward.size()) != rank ||
        static_cast<int>(lift.backward.size()) != rank)
      throw InputError("lift " + lift.stable_letter +
                       " must give an image for every kernel generator");
    if (auto bad = find_lift_inverse_violation(lift, k_normal))
      throw InputError("lift " + lift.stable_letter +
                       " is not invertible on generator '" +
                       k.generators()[static_cast<std::size_t>(*bad)] + "'");
    gens.push_back(lift.stable_letter.empty() ? "t" + std::to_string(i + 1)
                                              : lift.stable_letter);
  }
  std::vector<Word> rels;
  for (int r : k_pres.marked_relators)
    rels.push_back(k.relators()[static_cast<std::size_t>(r)]);
  const int kernel_rel_count = static_cast<int>(rels.size());
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    const Letter t = make_letter(rank + static_cast<int>(i));
    for (int g = 0; g < rank; ++g) {
      Word rel{-t, make_letter(g), t};
      Word img = apply_lift(lifts[i], LiftDirection::kForward,
                            Word{make_letter(g)});
      Word inv = inverse_word(img);
      rel.insert(rel.end(), inv.begin(), inv.end());
      rels.push_back(cyclic_reduce(rel));
    }
  }
  HomPresentation out =
      HomPresentation::all_marked(Presentation(std::move(gens), std::move(rels)));
  out.kernel_rank = rank;
  out.kernel_relator_count = kernel_rel_count;
  return out;
}

}  // namespace homfill
