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

#include "psmet/weakvalue.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "psmet/errors.hpp"

namespace psmet {

namespace {

void require_pair_dims(const Ket& psi_i, const Ket& psi_f,
                       const HermitianOperator& gen) {
  if (psi_i.dim() != gen.dim() || psi_f.dim() != gen.dim()) {
    throw DimensionMismatchError("pre/post states and observable dimensions "
                                 "do not match");
  }
}

// sub_dim^n with cap enforcement; throws before anything can overflow.
std::size_t probe_dimension(const EntangledProbeConfig& config) {
  if (config.n == 0) {
    throw InvalidArgumentError("probe needs at least one subsystem");
  }
  if (config.sub_dim < 2) {
    throw InvalidArgumentError("subsystem dimension must be at least 2");
  }
  std::size_t dim = 1;
  for (std::size_t k = 0; k < config.n; ++k) {
    if (dim > tol::kProbeDimCap / config.sub_dim) {
      throw DimensionCapError("probe dimension " + std::to_string(config.sub_dim) +
                              "^" + std::to_string(config.n) + " exceeds the cap " +
                              std::to_string(tol::kProbeDimCap));
    }
    dim *= config.sub_dim;
  }
  if (dim > tol::kProbeDimCap) {
    throw DimensionCapError("probe dimension exceeds the cap " +
                            std::to_string(tol::kProbeDimCap));
  }
  return dim;
}

}  // namespace

Complex weak_value(const Ket& psi_i, const Ket& psi_f,
                   const HermitianOperator& gen) {
  require_pair_dims(psi_i, psi_f, gen);
  const Complex overlap = psi_f.inner(psi_i);
  if (std::abs(overlap) < tol::kWeakValueFloor) {
    throw OrthogonalPrePostError(
        "pre- and postselected states are (numerically) orthogonal; "
        "the weak value is undefined");
  }
  const Complex numerator = inner(psi_f.amplitudes(), gen.apply(psi_i));
  return numerator / overlap;
}

double wva_efficiency(const Ket& psi_i, const Ket& psi_f,
                      const HermitianOperator& gen) {
  require_pair_dims(psi_i, psi_f, gen);
  return std::norm(inner(psi_f.amplitudes(), gen.apply(psi_i)));
}

Ket optimal_postselection(const Ket& psi_i, const HermitianOperator& gen) {
  if (psi_i.dim() != gen.dim()) {
    throw DimensionMismatchError("state and observable dimensions do not match");
  }
  const RawVector image = gen.apply(psi_i);
  const double second = gen.second_moment(psi_i);
  if (second < tol::kSecondMomentFloor) {
    throw NullVectorError("observable annihilates the preselected state; "
                          "no optimal postselection exists");
  }
  return Ket::normalized(image);
}

OptimalWvResult optimal_wv_and_prob(const Ket& psi_i,
                                    const HermitianOperator& gen) {
  if (psi_i.dim() != gen.dim()) {
    throw DimensionMismatchError("state and observable dimensions do not match");
  }
  const double mean = gen.expectation(psi_i);
  const double second = gen.second_moment(psi_i);
  OptimalWvResult result;
  if (std::abs(mean) < tol::kMeanFloor) {
    // Anomalous regime: the weak value diverges, the success probability
    // vanishes, and the product p_s |A_w|^2 = <A^2> stays finite.
    result.probability = 0.0;
    return result;
  }
  result.weak_value = second / mean;
  result.probability = mean * mean / second;
  return result;
}

EntangledProbe entangled_probe(const EntangledProbeConfig& config) {
  const std::size_t dim = probe_dimension(config);
  std::vector<double> local(config.sub_dim, 0.0);
  local[0] = config.lambda_x;
  local[1] = config.lambda_y;
  std::vector<double> diag(dim, 0.0);
  for (std::size_t index = 0; index < dim; ++index) {
    std::size_t rest = index;
    double sum = 0.0;
    for (std::size_t k = 0; k < config.n; ++k) {
      sum += local[rest % config.sub_dim];
      rest /= config.sub_dim;
    }
    diag[index] = sum;
  }
  // All-zeros digit string is index 0; all-ones is sum of sub_dim^k.
  std::size_t all_ones = 0;
  std::size_t stride = 1;
  for (std::size_t k = 0; k < config.n; ++k) {
    all_ones += stride;
    stride *= config.sub_dim;
  }
  RawVector amplitudes(dim, Complex(0.0, 0.0));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  amplitudes[0] = Complex(inv_sqrt2, 0.0);
  amplitudes[all_ones] = Complex(inv_sqrt2, 0.0);
  return EntangledProbe{Ket(std::move(amplitudes)),
                        HermitianOperator::diagonal(diag)};
}

EntangledScalingReport entangled_scaling_report(
    const EntangledProbeConfig& config, std::optional<double> weak_value_target) {
  probe_dimension(config);  // enforce the same validity envelope
  const double n = static_cast<double>(config.n);
  const double lx = config.lambda_x;
  const double ly = config.lambda_y;
  const double mean = n * (lx + ly) / 2.0;
  const double second = n * n * (lx * lx + ly * ly) / 2.0;
  if (second < tol::kSecondMomentFloor) {
    throw NullVectorError("collective observable annihilates the probe state");
  }

  EntangledScalingReport report;
  report.n = config.n;
  report.lambda_x = lx;
  report.lambda_y = ly;
  if (std::abs(mean) >= tol::kMeanFloor) {
    const double wv = second / mean;
    report.weak_value = wv;
    report.probability = mean * mean / second;
    report.approx_probability = n * n * lx * lx / (wv * wv);
    report.relative_gap =
        std::abs(report.probability - report.approx_probability) /
        report.probability;
    report.amplified_weak_value = n * lx / std::sqrt(report.probability);
  }
  report.anomalous = report.probability < tol::kAnomalousProb;
  if (weak_value_target.has_value()) {
    const double target = *weak_value_target;
    // lambda_y solving n(lx^2 + ly^2)/(lx + ly) = target:
    // n ly^2 - target ly + (n lx^2 - target lx) = 0.
    const double disc =
        target * target - 4.0 * n * n * lx * lx + 4.0 * n * target * lx;
    if (disc >= 0.0) {
      const double root = std::sqrt(disc);
      report.lambda_y_roots =
          std::make_pair((target + root) / (2.0 * n), (target - root) / (2.0 * n));
    }
  }
  return report;
}

GeometricPhaseResult geometric_phase(const Ket& psi_i, const Ket& eigenvector,
                                     const Ket& psi_f) {
  if (psi_i.dim() != eigenvector.dim() || psi_f.dim() != eigenvector.dim()) {
    throw DimensionMismatchError("state dimensions do not match");
  }
  GeometricPhaseResult result;
  result.bargmann_product =
      psi_f.inner(eigenvector) * eigenvector.inner(psi_i) * psi_i.inner(psi_f);
  if (std::abs(result.bargmann_product) < tol::kDegenerateBargmann) {
    result.degenerate = true;
    return result;
  }
  double phase = std::arg(result.bargmann_product);
  if (phase <= -std::numbers::pi) {
    phase = std::numbers::pi;
  }
  result.phase = phase;
  return result;
}

double efficiency_via_phases(const Ket& psi_i, const HermitianOperator& gen,
                             const Ket& psi_f) {
  require_pair_dims(psi_i, psi_f, gen);
  if (std::abs(psi_f.inner(psi_i)) < tol::kWeakValueFloor) {
    throw OrthogonalPrePostError(
        "global overlap vanishes; the per-branch geometric phases are undefined");
  }
  const Spectrum& spectrum = gen.spectrum();
  Complex sum(0.0, 0.0);
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
    const Ket& branch = spectrum.eigenvectors[k];
    const GeometricPhaseResult r = geometric_phase(psi_i, branch, psi_f);
    if (r.degenerate) {
      continue;
    }
    const double magnitude = std::abs(psi_f.inner(branch) * branch.inner(psi_i));
    sum += spectrum.eigenvalues[k] * magnitude *
           Complex(std::cos(r.phase), std::sin(r.phase));
  }
  return std::norm(sum);
}

double first_order_meter_average(const MeterModel& model) {
  return 2.0 * model.coupling *
         (model.weak_value.real() * model.alpha_corr.imag() +
          model.weak_value.imag() * model.alpha_corr.real());
}

}  // namespace psmet
