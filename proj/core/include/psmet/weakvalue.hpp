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

#ifndef PSMET_WEAKVALUE_HPP_
#define PSMET_WEAKVALUE_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>

#include "psmet/linalg.hpp"
#include "psmet/tolerances.hpp"

namespace psmet {

// Phase of a three-vertex Bargmann invariant <psi_f|a><a|psi_i><psi_i|psi_f>.
// The phase lives on the branch (-pi, pi]; when the invariant's magnitude
// falls below tol::kDegenerateBargmann the phase is ill-defined and the
// branch is flagged degenerate (phase reported as 0).
struct GeometricPhaseResult {
  double phase = 0.0;
  Complex bargmann_product{0.0, 0.0};
  bool degenerate = false;
};

// Gaussian-meter readout model for a weak measurement at coupling g.
// alpha_corr is the meter correlation <R F> between the readout observable
// and the pointer conjugate entering the first-order response.
struct MeterModel {
  Complex weak_value{0.0, 0.0};
  Complex alpha_corr{0.0, 0.0};
  double coupling = 0.0;

  // First-order perturbation theory is unreliable past |g| ~ 0.1.
  bool beyond_first_order() const { return std::abs(coupling) > tol::kCouplingWarn; }
};

// Weak value and success probability of the amplification-optimal
// postselection built from |psi_f> proportional to A|psi_i>.  When the
// pre-selected mean <A> vanishes the weak value diverges while the success
// probability goes to zero; that regime is reported by an absent weak value
// rather than an exception.
struct OptimalWvResult {
  std::optional<double> weak_value;
  double probability = 0.0;

  bool divergent() const { return !weak_value.has_value(); }
};

// GHZ-type collective probe: n subsystems of dimension sub_dim, each
// carrying the local observable diag(lambda_x, lambda_y, 0, ...), prepared
// in (|00...0> + |11...1>)/sqrt(2).
struct EntangledProbeConfig {
  std::size_t n = 2;
  double lambda_x = 1.0;
  double lambda_y = 0.0;
  std::size_t sub_dim = 2;
};

struct EntangledProbe {
  Ket psi_i;
  HermitianOperator collective;
};

// Closed-form scaling analysis of the entangled probe under the optimal
// postselection.  approx_probability is the small-lambda_y inference
// n^2 lambda_x^2 / A_w^2 whose accuracy the relative gap quantifies;
// amplified_weak_value is the weak value that inference would assign from
// the exact success probability, n·lambda_x/sqrt(p).  A target weak value
// may be supplied; the lambda_y values realizing it (when real) are
// returned as roots of the resulting quadratic.
struct EntangledScalingReport {
  std::size_t n = 0;
  double lambda_x = 0.0;
  double lambda_y = 0.0;
  std::optional<double> weak_value;
  double probability = 0.0;
  double approx_probability = 0.0;
  double relative_gap = 0.0;
  double amplified_weak_value = 0.0;
  bool anomalous = false;
  std::optional<std::pair<double, double>> lambda_y_roots;

  bool divergent() const { return !weak_value.has_value(); }
};

// <psi_f|A|psi_i> / <psi_f|psi_i>.  Throws OrthogonalPrePostError when the
// overlap magnitude is below tol::kWeakValueFloor.
Complex weak_value(const Ket& psi_i, const Ket& psi_f, const HermitianOperator& gen);

// Amplification efficiency |<psi_f|A|psi_i>|^2 = p_s |A_w|^2; finite (and
// well-defined) even for orthogonal pre- and postselection.
double wva_efficiency(const Ket& psi_i, const Ket& psi_f, const HermitianOperator& gen);

// The efficiency-maximizing postselection A|psi_i>/||A|psi_i>||.  Throws
// NullVectorError when <A^2> falls below tol::kSecondMomentFloor.
Ket optimal_postselection(const Ket& psi_i, const HermitianOperator& gen);

// Weak value <A^2>/<A> and success probability <A>^2/<A^2> of the optimal
// postselection; divergent (absent weak value, zero probability) when the
// mean is below tol::kMeanFloor.
OptimalWvResult optimal_wv_and_prob(const Ket& psi_i, const HermitianOperator& gen);

// Materializes the n-party probe state and collective observable.  Throws
// DimensionCapError when sub_dim^n exceeds tol::kProbeDimCap and
// InvalidArgumentError on an empty register or sub_dim < 2.
EntangledProbe entangled_probe(const EntangledProbeConfig& config);

// Closed-form weak value, success probability, approximation gap, and
// anomaly classification for the entangled probe (no tensor product is
// built, but the dimension cap is still enforced).
EntangledScalingReport entangled_scaling_report(
    const EntangledProbeConfig& config,
    std::optional<double> weak_value_target = std::nullopt);

// Bargmann-invariant phase for one eigenbranch of the pre/post pair.
GeometricPhaseResult geometric_phase(const Ket& psi_i, const Ket& eigenvector,
                                     const Ket& psi_f);

// Reassembles the efficiency from per-branch magnitudes and geometric
// phases: |sum_k a_k |<psi_f|a_k><a_k|psi_i>| e^{i Phi_k}|^2.  Degenerate
// branches contribute zero.  Throws OrthogonalPrePostError when the global
// overlap vanishes (all phases would be undefined).
double efficiency_via_phases(const Ket& psi_i, const HermitianOperator& gen,
                             const Ket& psi_f);

// First-order meter readout 2g [Re(A_w) Im(alpha) + Im(A_w) Re(alpha)].
double first_order_meter_average(const MeterModel& model);

}  // namespace psmet

#endif  // PSMET_WEAKVALUE_HPP_
