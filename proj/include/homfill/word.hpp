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

#ifndef HOMFILL_WORD_HPP_
#define HOMFILL_WORD_HPP_

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace homfill {

// A letter is a signed generator index shifted by one: generator g is +(g+1),
// its formal inverse is -(g+1). Zero is never a valid letter.
using Letter = int;
using Word = std::vector<Letter>;

inline Letter make_letter(int generator, bool inverse = false) {
  return inverse ? -(generator + 1) : generator + 1;
}
inline int generator_of(Letter l) { return std::abs(l) - 1; }
inline bool is_inverse(Letter l) { return l < 0; }

// Cancels adjacent x x^-1 pairs until none remain (single stack pass).
Word free_reduce(std::span<const Letter> w);

// Freely reduces, then strips matching first/last inverse pairs.
Word cyclic_reduce(std::span<const Letter> w);

// Formal inverse: reversed, each letter inverted.
Word inverse_word(std::span<const Letter> w);

Word concat(std::span<const Letter> u, std::span<const Letter> v);

// Lexicographically smallest rotation of w.
Word min_rotation(std::span<const Letter> w);

bool is_reduced(std::span<const Letter> w);
bool is_cyclically_reduced(std::span<const Letter> w);

// Order used for deterministic tie-breaking on words: shorter first, then by
// letters compared as (generator, positive-before-inverse).
bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Letter l : w) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(l));
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

}  // namespace homfill

#endif  // HOMFILL_WORD_HPP_
