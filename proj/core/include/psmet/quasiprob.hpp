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

#ifndef PSMET_QUASIPROB_HPP_
#define PSMET_QUASIPROB_HPP_

#include <cstddef>
#include <vector>

#include "psmet/linalg.hpp"
#include "psmet/states.hpp"
#include "psmet/tolerances.hpp"

namespace psmet {

// Kirkwood-Dirac quasiprobability table over the observable eigenbasis
// (rows, ascending eigenvalue) and a postselection basis (columns, basis
// order): entries[m][k] = <psi|a_m><a_m|f_k><f_k|psi>.  Entries sum to 1;
// the row marginal is |<a_m|psi>|^2 and the column marginal |<f_k|psi>|^2.
struct KDTable {
  std::vector<double> row_eigenvalues;
  std::vector<Ket> row_basis;
  std::vector<Ket> col_basis;
  std::vector<std::vector<Complex>> entries;
};

// Doubly extended variant entries[j][l][k] = <f_k|a_j><a_j|rho|a_l><a_l|f_k>
// indexed (a, a', f); sums to 1, and the j == l slices are real and
// nonnegative for any state.
struct ExtendedKDTable {
  std::vector<double> eigenvalues;
  std::vector<Ket> row_basis;
  std::vector<Ket> col_basis;
  std::vector<std::vector<std::vector<Complex>>> entries;
};

// Classification of a KD table against the standard classicality notion:
// classical iff every entry is real (within imag_tolerance) and its real
// part is above -negative_tolerance.
struct ClassicalityReport {
  double min_real = 0.0;
  double max_abs_imag = 0.0;
  bool classical = false;
  double negative_tolerance = tol::kClassicalNegative;
  double imag_tolerance = tol::kClassicalImag;
};

// Residual of the decomposition Re(q) = Wigner + quantum modification,
// checked entrywise; the imaginary content of q is reported separately.
struct IdentityCheckResult {
  double max_residual = 0.0;
  double max_abs_imag = 0.0;
  bool imag_flagged = false;
};

// Uniform-condition check: uniform_cond48 is true when, for every selected
// branch with non-vanishing overlap, the products <a_m|psi><f_k|a_m> agree
// with <f_k|psi> for every m; under that condition all intrinsic weak
// values coincide and the efficiency xi vanishes.
struct Theorem2Result {
  bool uniform_cond48 = false;
  double xi = 0.0;
};

KDTable kd_distribution(const Ket& psi, const HermitianOperator& gen,
                        const Postselection& ps);

ExtendedKDTable extended_kd_distribution(const Ket& psi,
                                         const HermitianOperator& gen,
                                         const Postselection& ps);

// Postselected QFI assembled from the doubly extended table:
// 4 Re(sum q a a')/p - 4 |sum q a|^2 / p^2 with both sums restricted to the
// selected columns.  Throws VanishingPostselectionError when p_ps is below
// tol::kProbabilityFloor.
double postselected_qfi_from_quasiprob(const ExtendedKDTable& table,
                                       const std::vector<double>& eigenvalues,
                                       const std::vector<std::size_t>& selected,
                                       double p_ps);

// Classical two-step joint probability |<a_m|psi>|^2 |<a_m|f_k>|^2, laid
// out exactly like the KD table.
std::vector<std::vector<double>> wigner_formula(const Ket& psi,
                                                const HermitianOperator& gen,
                                                const Postselection& ps);

// Non-commutativity correction per (m, k): (1/2) Tr((rho - rho')F_k), with
// rho' the nonselective post-measurement state under {P_m, 1 - P_m}.  This
// is the real (Margenau-Hill) half of the correction, the part entering
// Re(q) = Wigner + modification; its quarter-turn companion
// (1/2) Tr((rho - rho') F_k^{pi/2}), with F^{pi/2} the conjugation of F_k
// by the pi/2 phase rotation about P_m, equals Im(q) exactly and is
// tracked by kd_identity_check instead of being folded in here.
std::vector<std::vector<double>> quantum_modification(const Ket& psi,
                                                      const HermitianOperator& gen,
                                                      const Postselection& ps);

IdentityCheckResult kd_identity_check(const Ket& psi, const HermitianOperator& gen,
                                      const Postselection& ps);

ClassicalityReport classicality_report(
    const KDTable& table, double negative_tolerance = tol::kClassicalNegative,
    double imag_tolerance = tol::kClassicalImag);

// Evaluates the uniform condition on the encoded state directly, together
// with the efficiency xi = p * QFI it controls.  Throws
// VanishingPostselectionError when the selection probability is below
// tol::kProbabilityFloor.
Theorem2Result theorem2_check(const Ket& psi_theta, const HermitianOperator& gen,
                              const Postselection& ps);

}  // namespace psmet

#endif  // PSMET_QUASIPROB_HPP_
