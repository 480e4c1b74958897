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

#ifndef PSMET_TOLERANCES_HPP_
#define PSMET_TOLERANCES_HPP_

#include <cstddef>

namespace psmet {
namespace tol {

// Centralized numerical thresholds. Every module reads these constants instead
// of embedding magic numbers, so regression tolerances have a single source of
// truth.

// Maximum allowed |A - A^dag| entry (relative to max(1, max|A_ij|)) for a
// matrix accepted as Hermitian.
inline constexpr double kHermiticity = 1e-12;

// Pairwise |<f_i|f_j> - delta_ij| allowed in an orthonormal basis.
inline constexpr double kOrthonormality = 1e-10;

// Allowed deviation of a ket norm from 1.
inline constexpr double kNormalization = 1e-10;

// Eigendecomposition reconstruction residual target (desk-scale dimensions).
inline constexpr double kReconstruction = 1e-9;

// Postselection probabilities below this floor are treated as vanishing: the
// renormalized state is withheld and the postselected QFI is flagged divergent.
inline constexpr double kProbabilityFloor = 1e-12;

// Overlaps |<f_k|psi>| below this floor leave the branch weak value undefined;
// cross-product formulas remain usable through numerator/overlap pairs.
inline constexpr double kWeakValueFloor = 1e-10;

// |<A>| below this floor makes the optimal weak value A_w = <A^2>/<A> a
// divergence flag rather than a ratio.
inline constexpr double kMeanFloor = 1e-12;

// <A^2> below this floor means A|psi> is a null vector and no optimal
// postselection state exists.
inline constexpr double kSecondMomentFloor = 1e-14;

// Jacobi eigensolver: stop once the off-diagonal Frobenius norm falls below
// kJacobiOffdiagRel times the Frobenius norm of the input; give up after
// kJacobiMaxSweeps full sweeps.
inline constexpr double kJacobiOffdiagRel = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

// Consecutive eigenvalues closer than this form a degenerate cluster subject
// to the deterministic eigenvector ordering rule.
inline constexpr double kDegeneracyGap = 1e-9;

// Smallest amplitude magnitude eligible as the phase-fixing pivot of an
// eigenvector or completed basis vector.
inline constexpr double kPhasePivot = 1e-8;

// Additive slack on efficiency-bound comparisons (xi <= 4*norm + slack).
inline constexpr double kBoundSlack = 1e-9;

// Amplitude threshold for the saturation conditions: mean <A> and the
// failed-branch numerators count as zero below this.
inline constexpr double kSaturationAmplitude = 1e-9;

// Classicality thresholds: an entry is classical when its real part is not
// below -kClassicalNegative and |imag| is at most kClassicalImag.
inline constexpr double kClassicalNegative = 1e-10;
inline constexpr double kClassicalImag = 1e-10;

// Uniform-overlap condition: per-branch amplitude products must match the
// branch overlap within this bound, for branches above kUniformOverlapFloor.
inline constexpr double kUniformCondition = 1e-9;
inline constexpr double kUniformOverlapFloor = 1e-10;

// |cos(alpha)| below this marks the singular postselection angle of the
// three-level protocol.
inline constexpr double kAlphaSingular = 1e-8;

// Meter couplings above this magnitude leave the first-order regime.
inline constexpr double kCouplingWarn = 0.1;

// Success probabilities below this are reported as the anomalous regime.
inline constexpr double kAnomalousProb = 0.1;

// Bargmann products below this magnitude have no well-defined phase.
inline constexpr double kDegenerateBargmann = 1e-12;

// Default threshold for CLI report checks (never used in physics formulas).
inline constexpr double kDefaultReport = 1e-9;

// Dense eigendecomposition is supported up to this dimension.
inline constexpr std::size_t kEigenDimCap = 32;

// Collective-probe construction is supported up to this total dimension.
inline constexpr std::size_t kProbeDimCap = 4096;

}  // namespace tol
}  // namespace psmet

#endif  // PSMET_TOLERANCES_HPP_
