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

#ifndef HOMFILL_PRESENTATION_HPP_
#define HOMFILL_PRESENTATION_HPP_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "homfill/word.hpp"

namespace homfill {

/// A finite presentation <A | R>. Relators are stored cyclically reduced and
/// nonempty; the cell D_r^x of the Cayley complex reads r starting at x.
class Presentation {
 public:
  Presentation() = default;
  /// Validates names (unique, nonempty) and cyclically reduces relators.
  /// Throws InputError on duplicate names, bad letters or relators that
  /// reduce to the empty word.
  Presentation(std::vector<std::string> generators, std::vector<Word> relators);

  int rank() const { return static_cast<int>(generators_.size()); }
  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  int rho() const;  // longest relator length, 0 if none

  std::optional<int> find_generator(std::string_view name) const;

  /// Whitespace separated letters; "x'" or "X" (when X is not itself a
  /// generator and x is) denote inverses. Throws InputError with the column.
  Word parse_word(std::string_view text) const;
  std::string format(std::span<const Letter> w) const;

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

/// <A || R_0>. In this library R_0 is always all relators of `base`; the
/// subset is kept explicit so extension presentations can mark which
/// relators came from the kernel.
struct HomPresentation {
  Presentation base;
  std::vector<int> marked_relators;
  // Set by build_extension_presentation: generators [0, kernel_rank) and
  // relators [0, kernel_relator_count) belong to K. -1 otherwise.
  int kernel_rank = -1;
  int kernel_relator_count = -1;

  static HomPresentation all_marked(Presentation p);
  bool is_extension() const { return kernel_rank >= 0; }
};

/// Chosen word images of a generator under an automorphism (forward) and its
/// inverse (backward). Images of inverse letters are the formal inverses.
struct AutLift {
  std::string stable_letter;  // name of t_i
  int stable_letter_index = 0;
  std::vector<Word> forward;
  std::vector<Word> backward;

  static AutLift identity(int rank, std::string name = "t",
                          int stable_index = 0);
};

enum class LiftDirection { kForward, kBackward };

/// Letterwise substitution followed by free reduction. Throws InputError on
/// letters outside the lift's generator range.
Word apply_lift(const AutLift& lift, LiftDirection direction,
                std::span<const Letter> w);

/// Same substitution without the final free reduction; this is the path that
/// a traced edge-by-edge image follows.
Word apply_lift_unreduced(const AutLift& lift, LiftDirection direction,
                          std::span<const Letter> w);

using NormalFormFn = std::function<Word(std::span<const Letter>)>;

/// Checks nf(Phi(Psi(a))) = a and nf(Psi(Phi(a))) = a for every generator.
/// Returns the first offending generator index, if any.
std::optional<int> find_lift_inverse_violation(const AutLift& lift,
                                               const NormalFormFn& k_normal);

/// Presentation <A, t_1..t_n || R_0, t_i^-1 a_j t_i Phi_i(a_j)^-1>. Relators
/// are ordered: kernel relators first, then for each lift i, each generator j.
/// Throws InputError naming the generator when a lift fails the inverse check.
HomPresentation build_extension_presentation(const HomPresentation& k_pres,
                                             const std::vector<AutLift>& lifts,
                                             const NormalFormFn& k_normal);

/// Everything a group description file declares.
struct GroupFile {
  std::string backend;  // free | free_abelian | direct_table | extension
  std::string kernel;   // backend of K when backend == extension
  Presentation presentation;  // K's presentation for extensions
  std::vector<std::pair<int, Word>> definitions;       // define x: word
  std::vector<std::pair<int, std::vector<int>>> perms;  // perm x: images
  std::vector<AutLift> lifts;
};

/// Line-oriented format:
///   generators: a b
///   relator: a b a' b'
///   backend: free_abelian
///   lift t1: a -> a b ; b -> b
///   lift t1 inverse: a -> a b' ; b -> b
/// `#` starts a comment. Errors carry "line L, column C".
GroupFile parse_group_file(std::string_view text);
GroupFile load_group_file(const std::string& path);

}  // namespace homfill

#endif  // HOMFILL_PRESENTATION_HPP_
