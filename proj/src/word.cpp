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

#include "homfill/word.hpp"

#include <algorithm>

namespace homfill {

Word free_reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word cyclic_reduce(std::span<const Letter> w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo),
              r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word inverse_word(std::span<const Letter> w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l = -l;
  return out;
}

Word concat(std::span<const Letter> u, std::span<const Letter> v) {
  Word out(u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

namespace {

// Generator ascending, positive letter before its inverse.
int letter_key(Letter l) { return 2 * generator_of(l) + (l < 0 ? 1 : 0); }

bool lex_less(std::span<const Letter> a, std::span<const Letter> b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](Letter x, Letter y) { return letter_key(x) < letter_key(y); });
}

}  // namespace

Word min_rotation(std::span<const Letter> w) {
  Word best(w.begin(), w.end());
  Word cur = best;
  for (std::size_t k = 1; k < w.size(); ++k) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (lex_less(cur, best)) best = cur;
  }
  return best;
}

bool is_reduced(std::span<const Letter> w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == -w[i - 1]) return false;
  return true;
}

bool is_cyclically_reduced(std::span<const Letter> w) {
  if (!is_reduced(w)) return false;
  return w.size() < 2 || w.front() != -w.back();
}

bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return lex_less(a, b);
}

}  // namespace homfill
