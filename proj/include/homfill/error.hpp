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

#ifndef HOMFILL_ERROR_HPP_
#define HOMFILL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace homfill {

// Bad input: malformed files, words that do not close, letters out of range.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured budget (vertices, B&B nodes, enumeration) ran out, or a
// computation needs a larger ball than the one supplied.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed. Always a bug or corrupted input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace homfill

#endif  // HOMFILL_ERROR_HPP_
