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

#ifndef HOMFILL_BACKEND_HPP_
#define HOMFILL_BACKEND_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "homfill/presentation.hpp"
#include "homfill/word.hpp"

namespace homfill {

enum class BackendKind { kFree, kFreeAbelian, kDirectTable, kExtension };

std::string to_string(BackendKind kind);

inline constexpr std::size_t kDefaultVertexBudget = 200000;

/// Split extension normal form h = k * w with k in K-normal form and w a
/// freely reduced word in the stable letters (indices relative to t_1).
struct ExtensionNormalForm {
  Word k_part;
  Word t_part;
};

/// Solves the word problem for one group. Immutable and cheap to copy (the
/// heavy state is shared).
class GroupBackend {
 public:
  /// `definitions` map a generator to a word in the remaining generators;
  /// the backend substitutes them before normalising. Defined generators may
  /// only refer to undefined ones or to earlier definitions.
  static GroupBackend free(int rank,
                           std::vector<std::pair<int, Word>> definitions = {});
  static GroupBackend free_abelian(
      int rank, std::vector<std::pair<int, Word>> definitions = {});
  /// Finite group generated by permutations (one per undefined generator,
  /// acting on the right). Elements are numbered in BFS order and each gets
  /// its shortlex-least word as normal form.
  static GroupBackend direct_table(
      int rank, const std::vector<std::pair<int, std::vector<int>>>& perms,
      std::vector<std::pair<int, Word>> definitions = {});
  /// K x| F_n with t_i^-1 a t_i = Phi_i(a). Generators are K's followed by
  /// one stable letter per lift.
  static GroupBackend extension(GroupBackend kernel, std::vector<AutLift> lifts);

  BackendKind kind() const;
  int rank() const;  // size of the alphabet the backend accepts

  /// Canonical word; equal outputs iff equal group elements. Throws
  /// InputError for letters outside the alphabet.
  Word normal_form(std::span<const Letter> w) const;
  bool equal_in_group(std::span<const Letter> u, std::span<const Letter> v) const;

  // Extension backends only (InvariantError otherwise).
  int kernel_rank() const;
  const GroupBackend& kernel() const;
  const std::vector<AutLift>& lifts() const;
  ExtensionNormalForm split(std::span<const Letter> w) const;
  /// Coset of K containing w, as the reduced t-word (stable letters numbered
  /// from 0). Empty for non-extension backends.
  Word coset_of(std::span<const Letter> w) const;

  NormalFormFn normal_form_fn() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Normal forms of every element at word distance <= radius, in BFS
/// discovery order (generators ascending, positive letter before inverse).
/// Throws ResourceError when more than `vertex_budget` vertices are needed.
std::vector<Word> enumerate_ball_vertices(const GroupBackend& backend,
                                          const Presentation& pres, int radius,
                                          std::size_t vertex_budget =
                                              kDefaultVertexBudget);

/// A presentation together with the backend that decides its word problem.
struct Group {
  HomPresentation pres;
  GroupBackend backend;
  // Extensions: the kernel's own presentation and backend.
  std::optional<HomPresentation> kernel_pres;
  std::optional<GroupBackend> kernel_backend;

  bool is_extension() const { return kernel_pres.has_value(); }
};

/// Builds the backend a GroupFile declares and checks that every relator is
/// trivial in it. Throws InputError otherwise.
Group make_group(const GroupFile& file);
Group load_group(const std::string& path);

}  // namespace homfill

#endif  // HOMFILL_BACKEND_HPP_
