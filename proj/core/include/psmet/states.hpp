// Copyright 2026 The psmet Authors
//
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

#ifndef PSMET_STATES_HPP_
#define PSMET_STATES_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "psmet/linalg.hpp"

namespace psmet {

// Phase-encoding configuration: the generator A and the encoded parameter,
// kept as an anchor theta0 plus an offset delta_theta so protocols that reason
// about a true value and a detuning can share this type. The applied unitary
// is exp(-i * A * theta()).
struct EncodingConfig {
  HermitianOperator generator;
  double theta0 = 0.0;
  double delta_theta = 0.0;

  EncodingConfig(HermitianOperator gen, double theta)
      : generator(std::move(gen)), theta0(theta) {}
  EncodingConfig(HermitianOperator gen, double theta0_in, double delta_theta_in)
      : generator(std::move(gen)), theta0(theta0_in), delta_theta(delta_theta_in) {}

  double theta() const { return theta0 + delta_theta; }
};

// Projective postselection: a full orthonormal basis {|f_k>} together with the
// accepted index set. The projector is F = sum over accepted |f_k><f_k|.
class Postselection {
 public:
  // basis must contain exactly dim kets of dimension dim, pairwise orthonormal
  // within tol::kOrthonormality; selected must be non-empty, in range, and
  // duplicate-free. Selected indices are stored in ascending order.
  Postselection(std::vector<Ket> basis, std::vector<std::size_t> selected);

  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Ket>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& selected() const noexcept { return selected_; }
  bool is_selected(std::size_t k) const { return selected_mask_[k]; }

  CMatrix projector() const;

 private:
  std::vector<Ket> basis_;
  std::vector<std::size_t> selected_;
  std::vector<bool> selected_mask_;
};

// One accepted branch of a postselection.
struct BranchOutcome {
  std::size_t index;   // k into the postselection basis
  Complex amplitude;   // <f_k|psi_theta>
  double probability;  // |amplitude|^2
};

// Result of postselecting an encoded state. The renormalized state is withheld
// (not an error) when the success probability falls below
// tol::kProbabilityFloor; the per-branch amplitudes are always reported so
// downstream formulas can work with numerator/overlap pairs.
struct PostselectionOutcome {
  double probability = 0.0;
  std::optional<Ket> state;
  std::vector<BranchOutcome> per_branch;  // selected indices, ascending
};

// |psi_theta> = exp(-i*A*theta)|psi_i>, evaluated through the spectrum of A.
Ket encode(const Ket& psi_i, const EncodingConfig& cfg);

// Unnormalized projected vector F|psi>.
RawVector apply_projector(const Ket& psi, const Postselection& ps);

// Success probability, renormalized state, and per-branch amplitudes.
PostselectionOutcome postselect(const Ket& psi_theta, const Postselection& ps);

// Deterministically completes a partial orthonormal set to a full basis by
// Gram-Schmidt against the computational basis vectors in index order; each
// appended vector is phase-fixed by the library convention.
std::vector<Ket> complete_basis(std::vector<Ket> partial, std::size_t dim);

}  // namespace psmet

#endif  // PSMET_STATES_HPP_
