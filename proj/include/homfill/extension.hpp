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

#ifndef HOMFILL_EXTENSION_HPP_
#define HOMFILL_EXTENSION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "homfill/backend.hpp"
#include "homfill/cayley.hpp"
#include "homfill/filling.hpp"
#include "homfill/surface.hpp"

namespace homfill {

// Coset words use stable letters numbered from 0 (make_letter(i) is t_{i+1}),
// exactly as GroupBackend::coset_of returns them.

/// A fixed filling of one loop read from the identity of the K-ball.
struct Certificate {
  Word loop;
  TwoChain chain;
  Coeff area = 0;
};

struct LiftCertificates {
  std::vector<Certificate> phi_r;      // Phi(r) per K relator
  std::vector<Certificate> psi_r;      // Psi(r) per K relator
  std::vector<Certificate> psi_phi_r;  // Psi(Phi(r)) per K relator
  std::vector<Certificate> collar;     // a^-1 Psi(Phi(a)) per generator, read from a
};

struct TransferConstants {
  Coeff c = 0;
  Coeff c_prime = 0;
  Coeff c_double_prime = 0;
  int rho = 0;
  Coeff m = 1;
  std::vector<LiftCertificates> lifts;
  int k_ball_radius = 0;
};

/// Fills every certificate loop in `k_ball` (the kernel's own complex).
/// Throws ResourceError when a loop cannot be filled inside the ball.
TransferConstants compute_constants(const Group& h, const CayleyBall& k_ball,
                                    const FillOptions& opts = {});

/// Cell D_r^x -> D_r^{g x}. Throws ResourceError if a translate is missing.
TwoChain translate_chain(const CayleyBall& ball, std::span<const Letter> g, const TwoChain& c);

/// Phi_#(gamma) (forward) or Psi_#(gamma): edge (y, a) becomes the path of
/// the image of a read from the image of y.
OneCycle image_cycle(const CayleyBall& k_ball, const AutLift& lift, LiftDirection dir,
                     const OneCycle& gamma);

/// Certificate substitution: fills Phi(boundary c). Asserts the area bound.
TwoChain push_forward_filling(const CayleyBall& k_ball, const TwoChain& c, int lift,
                              const Group& h, const TransferConstants& k);

/// Fills gamma given c' filling Phi(gamma). Asserts the affine area bound.
TwoChain pull_back_filling(const CayleyBall& k_ball, const TwoChain& c_prime,
                           const OneCycle& gamma, int lift, const Group& h,
                           const TransferConstants& k);

struct TCycle {
  int stable_letter = 0;
  Word inner_coset;  // the shorter coset word
  Word outer_coset;  // inner_coset * t^{+-1}
  std::vector<int> faces;
  OneCycle inner_boundary;
  OneCycle outer_boundary;
};

/// Groups conjugation faces of a diagram over the H-ball by stable letter
/// and coset pair. Throws InputError when the diagram boundary carries a
/// stable-letter edge and InvariantError when a boundary fails to close.
std::vector<TCycle> detect_t_cycles(const CayleyBall& h_ball, const SurfaceDiagram& s);

enum class StepDirection { kPushForward, kPullBack };
std::string to_string(StepDirection d);

struct PushdownStep {
  Word coset;
  int stable_letter = 0;
  StepDirection direction = StepDirection::kPushForward;
  Coeff area_before = 0;
  Coeff area_after = 0;
  Coeff removed_area = 0;   // S_out plus the t-cycle
  Coeff inserted_area = 0;  // S_in
  Coeff out_boundary_length = 0;
  Coeff out_boundary_bound = 0;  // |gamma| + 2 rho Area
};

struct PushdownTrace {
  OneCycle input;
  TwoChain input_chain;
  std::vector<Word> cosets;  // W_c, shortlex order
  int max_depth = 0;
  std::vector<PushdownStep> steps;
  TwoChain final_chain;    // in the H-ball, inside K
  TwoChain final_k_chain;  // same chain in the K-ball
  Coeff final_area = 0;
  Word surviving_coset;
  Coeff m = 1;
  Coeff f_value = 0;
  std::string f_source;
};

/// Eliminates maximal-length cosets (shortlex-least first) until the chain
/// lies in K. gamma must be supported on K's coset.
PushdownTrace push_down(const CayleyBall& h_ball, const CayleyBall& k_ball, const Group& h,
                        const OneCycle& gamma, const TwoChain& c,
                        const TransferConstants& k, Coeff f_value,
                        const std::string& f_source);

/// f(|gamma|) for a chain whose own area may exceed the table value:
/// max(table[|gamma|] when present, Area(c), |gamma|).
Coeff instance_f_value(const std::vector<Coeff>& table, const OneCycle& gamma,
                       const TwoChain& c);

struct StepCheck {
  std::size_t index = 0;
  std::string lhs;
  std::string rhs;
  bool pass = false;
};

struct BoundReport {
  std::vector<StepCheck> steps;
  StepCheck final_check;    // final <= M^{k+1} f
  StepCheck theorem_check;  // final <= (M^2)^g f
  bool pass = false;
  Coeff f_value = 0;
  std::string f_source;
  int g_value = 0;
};

/// Instantiates every inequality numerically. Throws InputError when g is
/// below the trace's coset depth.
BoundReport verify_theorem_bound(const PushdownTrace& trace, int g_value);

/// Builds H-fillings of K-cycles that pass through the cosets named by a
/// route word: up-moves use a prism of conjugation cells plus a transferred
/// filling, down-moves route Psi(gamma) deeper and fill the difference in K.
class Router {
 public:
  Router(const Group& h, const CayleyBall& h_ball, const CayleyBall& k_ball,
         const TransferConstants& k, FillOptions opts = {});

  struct Result {
    OneCycle gamma;  // in the H-ball, on K's coset
    TwoChain chain;  // in the H-ball
    OneCycle k_gamma;
  };

  /// gamma is the loop `k_word` (K letters) at the identity.
  Result route(std::span<const Letter> k_word, std::span<const Letter> route_word) const;

  /// Embeds a K-ball chain or cycle into the coset Kw of the H-ball.
  TwoChain embed(std::span<const Letter> coset, const TwoChain& k_chain) const;
  OneCycle embed(std::span<const Letter> coset, const OneCycle& k_cycle) const;
  /// The K-ball chain of K-relator cells of c lying in the coset Kw.
  TwoChain to_kernel(std::span<const Letter> coset, const TwoChain& h_chain) const;
  OneCycle to_kernel(std::span<const Letter> coset, const OneCycle& h_cycle) const;

 private:
  TwoChain route_from(const Word& coset, const OneCycle& eta, const TwoChain& c_eta,
                      std::span<const Letter> rest) const;
  CellId conj_cell(const Word& base_h_word, int lift, int generator) const;
  Word h_word(std::span<const Letter> coset) const;

  const Group& h_;
  const CayleyBall& h_ball_;
  const CayleyBall& k_ball_;
  const TransferConstants& k_;
  FillOptions opts_;
};

/// Stable letters of a coset word in H's alphabet.
Word coset_to_h_word(const Group& h, std::span<const Letter> coset);

}  // namespace homfill

#endif  // HOMFILL_EXTENSION_HPP_
