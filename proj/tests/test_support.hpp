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

#ifndef HOMFILL_TESTS_TEST_SUPPORT_HPP_
#define HOMFILL_TESTS_TEST_SUPPORT_HPP_

#include <random>
#include <string>

#include "homfill/backend.hpp"
#include "homfill/word.hpp"

namespace homfill::testing {

inline std::string data(const std::string& name) {
  return std::string(HOMFILL_DATA_DIR) + "/" + name;
}

inline Group group(const std::string& name) { return load_group(data(name)); }

inline Word random_word(std::mt19937_64& rng, int rank, int length) {
  std::uniform_int_distribution<int> gen(0, rank - 1);
  std::bernoulli_distribution inv(0.5);
  Word w;
  for (int i = 0; i < length; ++i) w.push_back(make_letter(gen(rng), inv(rng)));
  return w;
}

inline Word word_of(const Group& g, const std::string& text) {
  return g.pres.base.parse_word(text);
}

}  // namespace homfill::testing

#endif  // HOMFILL_TESTS_TEST_SUPPORT_HPP_
