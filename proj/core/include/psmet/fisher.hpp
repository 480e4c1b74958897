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

#ifndef PSMET_FISHER_HPP_
#define PSMET_FISHER_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "psmet/linalg.hpp"
#include "psmet/states.hpp"

namespace psmet {

// Per-branch weak-value data. The numerator/overlap pair is always reported;
// the ratio A_w = numerator/overlap only exists above the overlap floor, so
// divergent branches stay representable without poisoning product formulas.
struct WeakValueRecord {
  std::size_t index;                  // k into the postselection basis
  Complex overlap;                    // <f_k|psi_theta>
  Complex numerator;                  // <f_k|A|psi_theta>
  double probability;                 // |overlap|^2
  std::optional<Complex> weak_value;  // absent when |overlap| < tol::kWeakValueFloor
};

// Resource prices for the information-cost rate.
struct CostModel {
  double prep_cost = 0.0;
  double measure_cost = 0.0;
  double postselect_cost = 0.0;
};

// Headline numbers of one postselected protocol. qfi is absent exactly when
// the success probability sits below tol::kProbabilityFloor; the efficiency
// xi = p * qfi stays finite there (it is computed from the pair-product form)
// and is still reported.
struct ProtocolMetrics {
  double probability = 0.0;
  std::optional<double> qfi;
  double xi = 0.0;
  std::optional<double> cost_rate;

  bool divergent() const { return !qfi.has_value(); }
};

// Efficiency-bound check result.
struct Theorem1Report {
  double xi = 0.0;
  double bound = 0.0;  // 4 * operator_norm_sq(A)
  bool within = false;
};

// Saturation-condition flags: the bound can only be met when the input state
// has zero mean and every rejected branch has a vanishing numerator.
struct SaturationReport {
  bool mean_zero = false;
  bool failed_branch_numerators_zero = false;
  double mean_abs = 0.0;               // |<psi_i|A|psi_i>|
  double max_failed_numerator = 0.0;   // max over rejected k of |<f_k|A|psi_theta>|
};

// 4 * Var(A) on the input state (clamped at zero against rounding).
double qfi_pure(const Ket& psi_0, const HermitianOperator& gen);

// (a_max - a_min)^2: the best value attainable without postselection.
double qfi_optimal(const HermitianOperator& gen);

// One record per accepted branch, ascending index order.
std::vector<WeakValueRecord> weak_value_records(const Ket& psi_theta,
                                                const HermitianOperator& gen,
                                                const Postselection& ps);

// Postselected QFI in derivative form together with probability, efficiency,
// and (optionally) the cost rate. Throws VanishingPostselectionError when the
// success probability is below the floor.
ProtocolMetrics qfi_postselected_derivative(
    const Ket& psi_i, const EncodingConfig& cfg, const Postselection& ps,
    const std::optional<CostModel>& cost = std::nullopt);

// Postselected QFI in operator form: (4/p)Tr(F A rho A) - (4/p^2)|Tr(F rho A)|^2.
double qfi_postselected_operator(const Ket& psi_i, const EncodingConfig& cfg,
                                 const Postselection& ps);

// Postselected QFI from the pairwise weak-value products
// I * p^2 = 4 * sum_{i<j} |N_i O_j - N_j O_i|^2 over accepted branches, which
// is regular even where individual weak values diverge.
double qfi_postselected_weakvalues(const Ket& psi_i, const EncodingConfig& cfg,
                                   const Postselection& ps);

// Non-throwing variant of qfi_postselected_derivative: below the probability
// floor the result is flagged divergent (qfi absent) and xi carries the finite
// pair-product value, zero at exactly vanishing probability.
ProtocolMetrics postselected_metrics(
    const Ket& psi_i, const EncodingConfig& cfg, const Postselection& ps,
    const std::optional<CostModel>& cost = std::nullopt);

// Independent symmetric finite-difference estimate
//   I ~ 8 * (1 - |<psi_ps(theta-h)|psi_ps(theta+h)>|) / (2h)^2
// on renormalized postselected states; matches the analytic value to O(h^2).
// Requires the success probability to stay at least ten times the floor at
// theta and theta +- h.
double qfi_finite_difference(const Ket& psi_i, const EncodingConfig& cfg,
                             const Postselection& ps, double h);

// xi = p * I.
double efficiency_xi(double probability, double qfi);

// Checks 0 <= xi <= 4 * operator_norm_sq(A) with additive slack
// tol::kBoundSlack on both sides.
Theorem1Report check_theorem1(const Ket& psi_i, const EncodingConfig& cfg,
                              const Postselection& ps);

// Evaluates the two saturation conditions at tol::kSaturationAmplitude.
SaturationReport check_saturation_conditions(const Ket& psi_i,
                                             const EncodingConfig& cfg,
                                             const Postselection& ps);

// R = p * I / (prep + p * measure + postselect). Costs must be non-negative
// and the denominator positive.
double info_cost_rate(double probability, double qfi, const CostModel& cost);

}  // namespace psmet

#endif  // PSMET_FISHER_HPP_
