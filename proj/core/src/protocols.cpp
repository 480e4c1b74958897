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

#include "psmet/protocols.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "psmet/errors.hpp"

namespace psmet {

ThreeLevelConfig::ThreeLevelConfig(double lambda, double lambda_tilde,
                                   double alpha, double phi, double theta0,
                                   double delta_theta)
    : lambda_(lambda),
      lambda_tilde_(lambda_tilde),
      alpha_(alpha),
      phi_(phi),
      theta0_(theta0),
      delta_theta_(delta_theta) {
  if (!(lambda > 0.0)) {
    throw InvalidArgumentError("lambda must be positive");
  }
  if (std::abs(lambda - std::abs(lambda_tilde)) <= tol::kDegeneracyGap) {
    throw DegenerateSpectrumError(
        "spectrum (lambda, lambda_tilde, -lambda) must be non-degenerate; "
        "|lambda_tilde| coincides with lambda");
  }
}

ThreeLevelConfig ThreeLevelConfig::from_x(double lambda, double lambda_tilde,
                                          double alpha, double x) {
  return ThreeLevelConfig(lambda, lambda_tilde, alpha, x, 0.0, 0.0);
}

SweepGrid::SweepGrid(std::vector<double> x_values, std::vector<double> alpha_values)
    : x_values_(std::move(x_values)), alpha_values_(std::move(alpha_values)) {
  for (const std::vector<double>* axis : {&x_values_, &alpha_values_}) {
    if (axis->empty()) {
      throw InvalidArgumentError("sweep axes must be non-empty");
    }
    for (std::size_t i = 1; i < axis->size(); ++i) {
      if (!((*axis)[i] > (*axis)[i - 1])) {
        throw InvalidArgumentError("sweep axes must be strictly increasing");
      }
    }
  }
}

SweepGrid SweepGrid::linspace(double x_min, double x_max, std::size_t x_steps,
                              double alpha_min, double alpha_max,
                              std::size_t alpha_steps) {
  auto make_axis = [](double lo, double hi, std::size_t steps) {
    if (steps == 0) {
      throw InvalidArgumentError("axis step count must be at least 1");
    }
    std::vector<double> values;
    values.reserve(steps);
    if (steps == 1) {
      values.push_back(lo);
      return values;
    }
    const double span = (hi - lo) / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
      values.push_back(lo + span * static_cast<double>(i));
    }
    values.back() = hi;
    return values;
  };
  return SweepGrid(make_axis(x_min, x_max, x_steps),
                   make_axis(alpha_min, alpha_max, alpha_steps));
}

ThreeLevelSetup three_level_setup(const ThreeLevelConfig& cfg) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double sa = std::sin(cfg.alpha());
  const double ca = std::cos(cfg.alpha());
  HermitianOperator gen = HermitianOperator::diagonal(
      {cfg.lambda(), cfg.lambda_tilde(), -cfg.lambda()});

  const Ket f1({Complex(inv_sqrt2, 0.0), Complex(0.0, 0.0),
                Complex(-inv_sqrt2, 0.0)});
  const Ket f2({Complex(ca * inv_sqrt2, 0.0), Complex(sa, 0.0),
                Complex(ca * inv_sqrt2, 0.0)});
  const std::vector<Ket> basis = complete_basis({f1, f2}, 3);

  // psi_i = U^dagger(theta0) (e^{i phi}|lambda> + e^{-i phi}|-lambda>)/sqrt(2);
  // the inverse encoding shifts the phase by +theta0 * lambda on |lambda>.
  const double total = cfg.phi() + cfg.theta0() * cfg.lambda();
  const Ket psi_i({std::polar(inv_sqrt2, total), Complex(0.0, 0.0),
                   std::polar(inv_sqrt2, -total)});

  return ThreeLevelSetup{psi_i, std::move(gen),
                         Postselection(basis, std::vector<std::size_t>{0, 1})};
}

ThreeLevelMetrics three_level_metrics(const ThreeLevelConfig& cfg) {
  const double x = cfg.x();
  const double sx = std::sin(x);
  const double cx = std::cos(x);
  const double ca = std::cos(cfg.alpha());
  const double lambda = cfg.lambda();

  ThreeLevelMetrics result;
  result.x = x;
  result.alpha_singular = cfg.alpha_singular();

  const double p = sx * sx + ca * ca * cx * cx;
  const double pair_sum = 4.0 * lambda * lambda * ca * ca;
  result.metrics.probability = p;
  if (p >= tol::kProbabilityFloor) {
    result.metrics.qfi = pair_sum / (p * p);
    result.metrics.xi = pair_sum / p;
  } else {
    result.metrics.xi = p > 0.0 ? pair_sum / p : 0.0;
  }

  // Branch overlaps O_1 = i sin x and O_2 = cos(alpha) cos x; the weak
  // values follow the same existence rule as the generic records.
  if (std::abs(sx) >= tol::kWeakValueFloor) {
    result.a_w1 = Complex(0.0, -lambda * cx / sx);
  }
  if (std::abs(ca * cx) >= tol::kWeakValueFloor) {
    result.a_w2 = Complex(0.0, lambda * sx / cx);
  }
  return result;
}

ThreeLevelLimits three_level_limits(double lambda, double alpha) {
  if (!(lambda > 0.0)) {
    throw InvalidArgumentError("lambda must be positive");
  }
  const double ca = std::cos(alpha);
  if (std::abs(ca) < tol::kAlphaSingular) {
    throw AlphaSingularError(
        "cos(alpha) vanishes; the x -> 0 limits are singular at alpha = " +
        std::to_string(alpha));
  }
  ThreeLevelLimits limits;
  limits.probability = ca * ca;
  limits.qfi = 4.0 * lambda * lambda / (ca * ca);
  limits.xi = 4.0 * lambda * lambda;
  return limits;
}

std::vector<SweepRecord> sweep(const ThreeLevelConfig& base,
                               const SweepGrid& grid) {
  std::vector<SweepRecord> records;
  records.reserve(grid.alpha_values().size() * grid.x_values().size());
  for (double alpha : grid.alpha_values()) {
    for (double x : grid.x_values()) {
      const ThreeLevelConfig cell(base.lambda(), base.lambda_tilde(), alpha,
                                  x + base.lambda() * base.delta_theta(),
                                  base.theta0(), base.delta_theta());
      const ThreeLevelMetrics m = three_level_metrics(cell);
      SweepRecord record;
      record.x = x;
      record.alpha = alpha;
      record.p_ps = m.metrics.probability;
      record.qfi = m.metrics.qfi.value_or(0.0);
      record.xi = m.metrics.xi;
      if (m.a_w1.has_value()) {
        record.aw1_re = m.a_w1->real();
        record.aw1_im = m.a_w1->imag();
      }
      if (m.a_w2.has_value()) {
        record.aw2_re = m.a_w2->real();
        record.aw2_im = m.a_w2->imag();
      }
      record.divergent = m.metrics.divergent() || !m.a_w1.has_value() ||
                         !m.a_w2.has_value();
      records.push_back(record);
    }
  }
  return records;
}

OptimumTables kd_tables_at_optimum(double alpha, double lambda) {
  const ThreeLevelConfig cfg = ThreeLevelConfig::from_x(lambda, 0.0, alpha,
                                                        kOptimumX);
  const ThreeLevelSetup setup = three_level_setup(cfg);
  const Ket psi_theta =
      encode(setup.psi_i, EncodingConfig(setup.generator, cfg.theta0(),
                                         cfg.delta_theta()));
  OptimumTables tables;
  tables.kd = kd_distribution(psi_theta, setup.generator, setup.ps);
  tables.wigner = wigner_formula(psi_theta, setup.generator, setup.ps);
  return tables;
}

}  // namespace psmet
