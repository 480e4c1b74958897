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

#include "psmet/fisher.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace psmet {

namespace {

// Pair-product numerator s = 4 * sum_{i<j} |N_i O_j - N_j O_i|^2 over the
// accepted branches; the postselected QFI is s / p^2 and the efficiency s / p.
double pair_product_numerator(const std::vector<WeakValueRecord>& records) {
  double acc = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      acc += std::norm(records[i].numerator * records[j].overlap -
                       records[j].numerator * records[i].overlap);
    }
  }
  return 4.0 * acc;
}

double total_probability(const std::vector<WeakValueRecord>& records) {
  double p = 0.0;
  for (const WeakValueRecord& r : records) {
    p += r.probability;
  }
  return p;
}

}  // namespace

double qfi_pure(const Ket& psi_0, const HermitianOperator& gen) {
  if (psi_0.dim() != gen.dim()) {
    throw DimensionMismatchError("state dimension " + std::to_string(psi_0.dim()) +
                                 " does not match generator dimension " +
                                 std::to_string(gen.dim()));
  }
  const double mean = gen.expectation(psi_0);
  const double second = gen.second_moment(psi_0);
  const double value = 4.0 * (second - mean * mean);
  return value < 0.0 ? 0.0 : value;
}

double qfi_optimal(const HermitianOperator& gen) {
  const std::vector<double>& values = gen.spectrum().eigenvalues;
  const double spread = values.back() - values.front();
  return spread * spread;
}

std::vector<WeakValueRecord> weak_value_records(const Ket& psi_theta,
                                                const HermitianOperator& gen,
                                                const Postselection& ps) {
  if (psi_theta.dim() != gen.dim() || psi_theta.dim() != ps.dim()) {
    throw DimensionMismatchError("state, generator, and postselection dimensions "
                                 "do not match");
  }
  const RawVector image = gen.apply(psi_theta);
  std::vector<WeakValueRecord> records;
  records.reserve(ps.selected().size());
  for (std::size_t k : ps.selected()) {
    const RawVector& f = ps.basis()[k].amplitudes();
    WeakValueRecord record;
    record.index = k;
    record.overlap = inner(f, psi_theta.amplitudes());
    record.numerator = inner(f, image);
    record.probability = std::norm(record.overlap);
    if (std::abs(record.overlap) >= tol::kWeakValueFloor) {
      record.weak_value = record.numerator / record.overlap;
    }
    records.push_back(record);
  }
  return records;
}

ProtocolMetrics postselected_metrics(const Ket& psi_i, const EncodingConfig& cfg,
                                     const Postselection& ps,
                                     const std::optional<CostModel>& cost) {
  const Ket psi_theta = encode(psi_i, cfg);
  const std::vector<WeakValueRecord> records =
      weak_value_records(psi_theta, cfg.generator, ps);
  ProtocolMetrics metrics;
  metrics.probability = total_probability(records);
  if (metrics.probability >= tol::kProbabilityFloor) {
    // Derivative form on the projected pair Psi = F|psi_theta>,
    // dPsi = F(-iA)|psi_theta>:  I = 4<dPsi|dPsi>/p - 4|<dPsi|Psi>|^2/p^2.
    // In branch amplitudes this is 4*sum|N_k|^2/p - 4|sum conj(N_k) O_k|^2/p^2.
    double image_sq = 0.0;
    Complex cross(0.0, 0.0);
    for (const WeakValueRecord& r : records) {
      image_sq += std::norm(r.numerator);
      cross += std::conj(r.numerator) * r.overlap;
    }
    const double p = metrics.probability;
    double qfi = 4.0 * image_sq / p - 4.0 * std::norm(cross) / (p * p);
    if (qfi < 0.0) {
      qfi = 0.0;
    }
    metrics.qfi = qfi;
    metrics.xi = p * qfi;
  } else {
    // Divergent regime: the QFI itself has no finite value, but p * I does;
    // report it through the pair-product form (zero at exactly zero
    // probability).
    metrics.xi = metrics.probability > 0.0
                     ? pair_product_numerator(records) / metrics.probability
                     : 0.0;
  }
  if (cost.has_value()) {
    const CostModel& c = *cost;
    if (c.prep_cost < 0.0 || c.measure_cost < 0.0 || c.postselect_cost < 0.0) {
      throw InvalidArgumentError("cost-model entries must be non-negative");
    }
    const double denominator =
        c.prep_cost + metrics.probability * c.measure_cost + c.postselect_cost;
    if (denominator <= 0.0) {
      throw ZeroCostDenominatorError("information-cost rate denominator is zero");
    }
    metrics.cost_rate = metrics.xi / denominator;
  }
  return metrics;
}

ProtocolMetrics qfi_postselected_derivative(const Ket& psi_i,
                                            const EncodingConfig& cfg,
                                            const Postselection& ps,
                                            const std::optional<CostModel>& cost) {
  ProtocolMetrics metrics = postselected_metrics(psi_i, cfg, ps, cost);
  if (metrics.divergent()) {
    throw VanishingPostselectionError(
        "postselection probability " + std::to_string(metrics.probability) +
        " is below the floor; the postselected QFI is undefined");
  }
  return metrics;
}

double qfi_postselected_operator(const Ket& psi_i, const EncodingConfig& cfg,
                                 const Postselection& ps) {
  const Ket psi_theta = encode(psi_i, cfg);
  if (psi_theta.dim() != ps.dim()) {
    throw DimensionMismatchError("state and postselection dimensions do not match");
  }
  const CMatrix f = ps.projector();
  const CMatrix& a = cfg.generator.matrix();
  const CMatrix rho = outer(psi_theta, psi_theta);
  const double p = (f * rho).trace().real();
  if (p < tol::kProbabilityFloor) {
    throw VanishingPostselectionError(
        "postselection probability " + std::to_string(p) +
        " is below the floor; the postselected QFI is undefined");
  }
  const double quadratic = (f * a * rho * a).trace().real();
  const Complex linear = (f * rho * a).trace();
  double qfi = 4.0 * quadratic / p - 4.0 * std::norm(linear) / (p * p);
  if (qfi < 0.0) {
    qfi = 0.0;
  }
  return qfi;
}

double qfi_postselected_weakvalues(const Ket& psi_i, const EncodingConfig& cfg,
                                   const Postselection& ps) {
  const Ket psi_theta = encode(psi_i, cfg);
  const std::vector<WeakValueRecord> records =
      weak_value_records(psi_theta, cfg.generator, ps);
  const double p = total_probability(records);
  if (p < tol::kProbabilityFloor) {
    throw VanishingPostselectionError(
        "postselection probability " + std::to_string(p) +
        " is below the floor; the postselected QFI is undefined");
  }
  return pair_product_numerator(records) / (p * p);
}

double qfi_finite_difference(const Ket& psi_i, const EncodingConfig& cfg,
                             const Postselection& ps, double h) {
  if (!(h > 0.0)) {
    throw InvalidArgumentError("finite-difference step must be positive");
  }
  const double floor = 10.0 * tol::kProbabilityFloor;
  const EncodingConfig minus(cfg.generator, cfg.theta0, cfg.delta_theta - h);
  const EncodingConfig plus(cfg.generator, cfg.theta0, cfg.delta_theta + h);
  const PostselectionOutcome at_theta = postselect(encode(psi_i, cfg), ps);
  const PostselectionOutcome at_minus = postselect(encode(psi_i, minus), ps);
  const PostselectionOutcome at_plus = postselect(encode(psi_i, plus), ps);
  if (at_theta.probability < floor || at_minus.probability < floor ||
      at_plus.probability < floor) {
    throw VanishingPostselectionError(
        "postselection probability too small for a finite-difference estimate");
  }
  const double fidelity = std::abs(at_minus.state->inner(*at_plus.state));
  return 8.0 * (1.0 - fidelity) / (4.0 * h * h);
}

double efficiency_xi(double probability, double qfi) {
  if (probability < 0.0 || probability > 1.0 + 1e-12) {
    throw InvalidArgumentError("probability must lie in [0, 1]");
  }
  if (qfi < 0.0) {
    throw InvalidArgumentError("Fisher information must be non-negative");
  }
  return probability * qfi;
}

Theorem1Report check_theorem1(const Ket& psi_i, const EncodingConfig& cfg,
                              const Postselection& ps) {
  const ProtocolMetrics metrics = qfi_postselected_derivative(psi_i, cfg, ps);
  Theorem1Report report;
  report.xi = metrics.xi;
  report.bound = 4.0 * operator_norm_sq(cfg.generator);
  report.within = (report.xi >= -tol::kBoundSlack) &&
                  (report.xi <= report.bound + tol::kBoundSlack);
  return report;
}

SaturationReport check_saturation_conditions(const Ket& psi_i,
                                             const EncodingConfig& cfg,
                                             const Postselection& ps) {
  const Ket psi_theta = encode(psi_i, cfg);
  if (psi_theta.dim() != ps.dim()) {
    throw DimensionMismatchError("state and postselection dimensions do not match");
  }
  SaturationReport report;
  report.mean_abs = std::abs(cfg.generator.expectation(psi_i));
  report.mean_zero = report.mean_abs < tol::kSaturationAmplitude;
  const RawVector image = cfg.generator.apply(psi_theta);
  for (std::size_t k = 0; k < ps.dim(); ++k) {
    if (ps.is_selected(k)) {
      continue;
    }
    const double magnitude =
        std::abs(inner(ps.basis()[k].amplitudes(), image));
    report.max_failed_numerator = std::max(report.max_failed_numerator, magnitude);
  }
  report.failed_branch_numerators_zero =
      report.max_failed_numerator < tol::kSaturationAmplitude;
  return report;
}

double info_cost_rate(double probability, double qfi, const CostModel& cost) {
  if (probability < 0.0 || probability > 1.0 + 1e-12) {
    throw InvalidArgumentError("probability must lie in [0, 1]");
  }
  if (qfi < 0.0) {
    throw InvalidArgumentError("Fisher information must be non-negative");
  }
  if (cost.prep_cost < 0.0 || cost.measure_cost < 0.0 || cost.postselect_cost < 0.0) {
    throw InvalidArgumentError("cost-model entries must be non-negative");
  }
  const double denominator =
      cost.prep_cost + probability * cost.measure_cost + cost.postselect_cost;
  if (denominator <= 0.0) {
    throw ZeroCostDenominatorError("information-cost rate denominator is zero");
  }
  return probability * qfi / denominator;
}

}  // namespace psmet
