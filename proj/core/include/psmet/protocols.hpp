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

#ifndef PSMET_PROTOCOLS_HPP_
#define PSMET_PROTOCOLS_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "psmet/fisher.hpp"
#include "psmet/linalg.hpp"
#include "psmet/quasiprob.hpp"
#include "psmet/states.hpp"
#include "psmet/tolerances.hpp"

namespace psmet {

// The working point used to realize the information-preserving limits
// numerically: closed forms are evaluated at this small offset instead of
// a symbolic x -> 0 limit.
inline constexpr double kOptimumX = 1e-8;

// Parameters of the three-level protocol: spectrum (lambda, lambda_tilde,
// -lambda), postselection mixing angle alpha, preparation phase phi, and
// the encoding point theta0 + delta_theta.  The effective detuning is
// x = phi - lambda * delta_theta.
class ThreeLevelConfig {
 public:
  ThreeLevelConfig(double lambda, double lambda_tilde, double alpha, double phi,
                   double theta0, double delta_theta);

  // Config at theta0 = delta_theta = 0, where phi coincides with x.
  static ThreeLevelConfig from_x(double lambda, double lambda_tilde, double alpha,
                                 double x);

  double lambda() const { return lambda_; }
  double lambda_tilde() const { return lambda_tilde_; }
  double alpha() const { return alpha_; }
  double phi() const { return phi_; }
  double theta0() const { return theta0_; }
  double delta_theta() const { return delta_theta_; }

  double x() const { return phi_ - lambda_ * delta_theta_; }

  // |cos alpha| below tol::kAlphaSingular: the success probability
  // degenerates to sin^2 x and the limit expressions blow up.
  bool alpha_singular() const {
    return std::abs(std::cos(alpha_)) < tol::kAlphaSingular;
  }

 private:
  double lambda_;
  double lambda_tilde_;
  double alpha_;
  double phi_;
  double theta0_;
  double delta_theta_;
};

// Axes for a metrics sweep; both sequences must be non-empty and strictly
// increasing.
class SweepGrid {
 public:
  SweepGrid(std::vector<double> x_values, std::vector<double> alpha_values);

  static SweepGrid linspace(double x_min, double x_max, std::size_t x_steps,
                            double alpha_min, double alpha_max,
                            std::size_t alpha_steps);

  const std::vector<double>& x_values() const { return x_values_; }
  const std::vector<double>& alpha_values() const { return alpha_values_; }

 private:
  std::vector<double> x_values_;
  std::vector<double> alpha_values_;
};

struct ThreeLevelSetup {
  Ket psi_i;
  HermitianOperator generator;
  Postselection ps;
};

// Closed-form protocol metrics plus the two intrinsic weak values; either
// weak value is absent when its branch overlap magnitude falls below
// tol::kWeakValueFloor.
struct ThreeLevelMetrics {
  ProtocolMetrics metrics;
  std::optional<Complex> a_w1;
  std::optional<Complex> a_w2;
  double x = 0.0;
  bool alpha_singular = false;
};

// x -> 0 limits: probability cos^2(alpha), QFI 4 lambda^2 sec^2(alpha),
// efficiency 4 lambda^2.
struct ThreeLevelLimits {
  double probability = 0.0;
  double qfi = 0.0;
  double xi = 0.0;
};

// One sweep cell.  Divergent quantities (QFI at vanishing probability, a
// weak value on a dark branch) are encoded as 0.0 with the divergent flag
// set.
struct SweepRecord {
  double x = 0.0;
  double alpha = 0.0;
  double p_ps = 0.0;
  double qfi = 0.0;
  double xi = 0.0;
  double aw1_re = 0.0;
  double aw1_im = 0.0;
  double aw2_re = 0.0;
  double aw2_im = 0.0;
  bool divergent = false;
};

struct OptimumTables {
  KDTable kd;
  std::vector<std::vector<double>> wigner;
};

// Materializes (psi_i, generator, postselection) for the protocol; the
// third postselection vector completes the basis orthonormally.
ThreeLevelSetup three_level_setup(const ThreeLevelConfig& cfg);

// Closed-form p, QFI, xi, and both intrinsic weak values at the config's x.
ThreeLevelMetrics three_level_metrics(const ThreeLevelConfig& cfg);

// Information-preserving limits; throws AlphaSingularError when
// |cos alpha| < tol::kAlphaSingular.
ThreeLevelLimits three_level_limits(double lambda, double alpha);

// Evaluates three_level_metrics over the grid, alpha-major then x, taking
// everything but alpha and x from the base config.
std::vector<SweepRecord> sweep(const ThreeLevelConfig& base, const SweepGrid& grid);

// KD and Wigner-formula tables of the protocol state at the working point
// x = kOptimumX (lambda_tilde = 0).
OptimumTables kd_tables_at_optimum(double alpha, double lambda);

}  // namespace psmet

#endif  // PSMET_PROTOCOLS_HPP_
