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

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "psmet/errors.hpp"
#include "psmet/fisher.hpp"
#include "psmet/linalg.hpp"
#include "psmet/protocols.hpp"
#include "psmet/states.hpp"
#include "support.hpp"

namespace psmet {
namespace {

const HermitianOperator kSigmaZ = HermitianOperator::diagonal({1.0, -1.0});

Ket plus_state() {
  return Ket::normalized({Complex(1.0, 0.0), Complex(1.0, 0.0)});
}

Postselection full_basis_selection(std::size_t dim) {
  std::vector<Ket> basis;
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < dim; ++i) {
    basis.push_back(Ket::basis_state(dim, i));
    all.push_back(i);
  }
  return Postselection(std::move(basis), std::move(all));
}

bool close_mixed(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

TEST_SUITE("fisher") {

TEST_CASE("pure-state information of a balanced qubit") {
  CHECK(qfi_pure(plus_state(), kSigmaZ) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(qfi_pure(Ket::basis_state(2, 0), kSigmaZ) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("pure-state information matches the direct variance") {
  Rng rng(512);
  const HermitianOperator gen(random_hermitian(5, rng));
  const Ket psi = random_haar_ket(5, 512);
  const RawVector apsi = gen.apply(psi);
  const double mean = inner(psi.amplitudes(), apsi).real();
  double second = 0.0;
  for (const Complex& c : apsi) {
    second += std::norm(c);
  }
  CHECK(std::abs(qfi_pure(psi, gen) - 4.0 * (second - mean * mean)) < 1e-10);
}

TEST_CASE("optimal information is the squared spectral range") {
  CHECK(qfi_optimal(kSigmaZ) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(qfi_optimal(HermitianOperator::diagonal({1.0, 0.0, -1.0})) ==
        doctest::Approx(4.0).epsilon(1e-12));
  Rng rng(513);
  const HermitianOperator gen(random_hermitian(6, rng));
  const std::vector<double>& a = gen.spectrum().eigenvalues;
  const double span = a.back() - a.front();
  CHECK(std::abs(qfi_optimal(gen) - span * span) < 1e-10);
}

TEST_CASE("branch records on a balanced qubit") {
  const Postselection ps = full_basis_selection(2);
  const std::vector<WeakValueRecord> records =
      weak_value_records(plus_state(), kSigmaZ, ps);
  REQUIRE(records.size() == 2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(records[0].overlap - Complex(r, 0.0)) < 1e-12);
  CHECK(std::abs(records[0].numerator - Complex(r, 0.0)) < 1e-12);
  CHECK(records[0].probability == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(records[0].weak_value.has_value());
  CHECK(std::abs(*records[0].weak_value - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("branch records are ratio-consistent") {
  using testing::random_instance;
  const testing::RandomInstance inst = random_instance(5, 220, 2);
  const Ket psi_theta = encode(inst.psi_i, EncodingConfig(inst.gen, inst.theta));
  const std::vector<WeakValueRecord> records =
      weak_value_records(psi_theta, inst.gen, inst.ps);
  for (const WeakValueRecord& r : records) {
    CHECK(std::abs(r.probability - std::norm(r.overlap)) < 1e-12);
    if (r.weak_value.has_value()) {
      CHECK(std::abs(*r.weak_value * r.overlap - r.numerator) < 1e-9);
    }
    // Numerator agrees with the spectral expansion.
    Complex spectral(0.0, 0.0);
    const Spectrum& s = inst.gen.spectrum();
    for (std::size_t m = 0; m < s.eigenvalues.size(); ++m) {
      spectral += s.eigenvalues[m] * inst.ps.basis()[r.index].inner(s.eigenvectors[m]) *
                  s.eigenvectors[m].inner(psi_theta);
    }
    CHECK(std::abs(spectral - r.numerator) < 1e-10);
  }
}

TEST_CASE("three-level branch weak values at the balanced detuning") {
  const ThreeLevelConfig cfg =
      ThreeLevelConfig::from_x(1.0, 0.0, 0.7853981633974483, 0.7853981633974483);
  const ThreeLevelSetup setup = three_level_setup(cfg);
  const Ket psi_theta = encode(setup.psi_i, EncodingConfig(setup.generator, 0.0, 0.0));
  const std::vector<WeakValueRecord> records =
      weak_value_records(psi_theta, setup.generator, setup.ps);
  REQUIRE(records.size() == 2);
  REQUIRE(records[0].weak_value.has_value());
  REQUIRE(records[1].weak_value.has_value());
  CHECK(std::abs(*records[0].weak_value - Complex(0.0, -1.0)) < 1e-10);
  CHECK(std::abs(*records[1].weak_value - Complex(0.0, 1.0)) < 1e-10);
}

TEST_CASE("rank-1 postselection carries no parameter information") {
  for (int trial = 0; trial < 20; ++trial) {
    const testing::RandomInstance inst =
        testing::random_instance(4, 6000 + static_cast<std::uint64_t>(trial), 1, 1,
                                 1e-3);
    const EncodingConfig cfg(inst.gen, inst.theta);
    const ProtocolMetrics m = qfi_postselected_derivative(inst.psi_i, cfg, inst.ps);
    REQUIRE(m.qfi.has_value());
    CHECK(std::abs(*m.qfi) < 1e-10);
    CHECK(std::abs(qfi_postselected_operator(inst.psi_i, cfg, inst.ps)) < 1e-10);
    CHECK(std::abs(qfi_postselected_weakvalues(inst.psi_i, cfg, inst.ps)) < 1e-10);
  }
}

TEST_CASE("full-basis postselection reduces to the pure-state information") {
  Rng rng(88);
  const HermitianOperator gen(random_hermitian(4, rng));
  const Ket psi = random_haar_ket(4, 88);
  const EncodingConfig cfg(gen, 0.6);
  const ProtocolMetrics m =
      qfi_postselected_derivative(psi, cfg, full_basis_selection(4));
  REQUIRE(m.qfi.has_value());
  CHECK(std::abs(*m.qfi - qfi_pure(psi, gen)) < 1e-10);
  CHECK(m.probability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("three-level working point approaches the preserving limits") {
  const ThreeLevelConfig cfg =
      ThreeLevelConfig::from_x(1.0, 0.0, 0.7853981633974483, 1e-6);
  const ThreeLevelSetup setup = three_level_setup(cfg);
  const EncodingConfig enc(setup.generator, 0.0, 0.0);
  const ProtocolMetrics m = qfi_postselected_derivative(setup.psi_i, enc, setup.ps);
  CHECK(std::abs(m.probability - 0.5) < 1e-6);
  REQUIRE(m.qfi.has_value());
  CHECK(std::abs(*m.qfi - 8.0) < 1e-4);
  CHECK(std::abs(m.xi - 4.0) < 1e-6);
}

TEST_CASE("operator form on the trivial and closed-form cases") {
  CHECK(std::abs(qfi_postselected_operator(plus_state(),
                                           EncodingConfig(kSigmaZ, 0.3),
                                           full_basis_selection(2)) -
                 4.0) < 1e-10);
  const ThreeLevelConfig cfg =
      ThreeLevelConfig::from_x(1.0, 0.0, 0.7853981633974483, 1.5707963267948966);
  const ThreeLevelSetup setup = three_level_setup(cfg);
  const EncodingConfig enc(setup.generator, 0.0, 0.0);
  const ProtocolMetrics m = qfi_postselected_derivative(setup.psi_i, enc, setup.ps);
  CHECK(m.probability == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(qfi_postselected_operator(setup.psi_i, enc, setup.ps) - 2.0) <
        1e-9);
}

TEST_CASE("the three forms agree on random instances") {
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 5);
    const testing::RandomInstance inst =
        testing::random_instance(dim, 40000 + static_cast<std::uint64_t>(trial), 1,
                                 0, 1e-3);
    const EncodingConfig cfg(inst.gen, inst.theta);
    const ProtocolMetrics m = qfi_postselected_derivative(inst.psi_i, cfg, inst.ps);
    REQUIRE(m.qfi.has_value());
    const double op_form = qfi_postselected_operator(inst.psi_i, cfg, inst.ps);
    const double wv_form = qfi_postselected_weakvalues(inst.psi_i, cfg, inst.ps);
    CHECK(close_mixed(*m.qfi, op_form, 1e-9));
    CHECK(close_mixed(*m.qfi, wv_form, 1e-9));
    CHECK(close_mixed(op_form, wv_form, 1e-9));
  }
}

TEST_CASE("a dark second branch reduces the pair form to one product") {
  // f2 is orthogonal to A|psi> but not to |psi>, so its weak value vanishes
  // and the pair sum collapses to 4 p1 p2 |A_w^1|^2.
  const HermitianOperator gen = HermitianOperator::diagonal({2.0, 1.0, -1.0});
  const Ket psi = Ket::normalized(
      {Complex(1.0, 0.0), Complex(1.0, 0.0), Complex(1.0, 0.0)});
  const Ket f2 = Ket::normalized(
      {Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(2.0, 0.0)});
  std::vector<Ket> basis = complete_basis({f2}, 3);
  // Order the accepted pair as (bright, dark).
  std::vector<Ket> reordered = {basis[1], basis[0], basis[2]};
  const Postselection ps(reordered, {0, 1});
  const EncodingConfig cfg(gen, 0.0);
  const std::vector<WeakValueRecord> records = weak_value_records(psi, gen, ps);
  REQUIRE(records.size() == 2);
  REQUIRE(records[1].weak_value.has_value());
  CHECK(std::abs(*records[1].weak_value) < 1e-12);
  REQUIRE(records[0].weak_value.has_value());
  const double p = records[0].probability + records[1].probability;
  const double expected = 4.0 * records[0].probability * records[1].probability *
                          std::norm(*records[0].weak_value) / (p * p);
  CHECK(std::abs(qfi_postselected_weakvalues(psi, cfg, ps) - expected) < 1e-10);
}

TEST_CASE("vanishing selection probability raises or flags") {
  const Postselection dark(
      {Ket::basis_state(2, 0), Ket::basis_state(2, 1)}, {1});
  const Ket zero = Ket::basis_state(2, 0);
  const EncodingConfig cfg(kSigmaZ, 0.4);
  CHECK_THROWS_AS(qfi_postselected_derivative(zero, cfg, dark),
                  VanishingPostselectionError);
  const ProtocolMetrics m = postselected_metrics(zero, cfg, dark);
  CHECK(m.divergent());
  CHECK(m.probability < 1e-12);
  CHECK(m.xi == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("finite differences recover the analytic information") {
  CHECK(std::abs(qfi_finite_difference(plus_state(), EncodingConfig(kSigmaZ, 0.0),
                                       full_basis_selection(2), 1e-4) -
                 4.0) < 1e-4);

  const ThreeLevelConfig cfg = ThreeLevelConfig::from_x(1.0, 0.0,
                                                        0.7853981633974483, 0.3);
  const ThreeLevelSetup setup = three_level_setup(cfg);
  const ThreeLevelMetrics closed = three_level_metrics(cfg);
  REQUIRE(closed.metrics.qfi.has_value());
  const double fd = qfi_finite_difference(
      setup.psi_i, EncodingConfig(setup.generator, 0.0, 0.0), setup.ps, 1e-4);
  CHECK(std::abs(fd - *closed.metrics.qfi) < 1e-3);

  const testing::RandomInstance inst = testing::random_instance(4, 909, 2, 0, 1e-2);
  const EncodingConfig enc(inst.gen, inst.theta);
  const ProtocolMetrics analytic = qfi_postselected_derivative(inst.psi_i, enc, inst.ps);
  REQUIRE(analytic.qfi.has_value());
  CHECK(std::abs(qfi_finite_difference(inst.psi_i, enc, inst.ps, 1e-4) -
                 *analytic.qfi) < 1e-4);

  CHECK_THROWS_AS(qfi_finite_difference(plus_state(), EncodingConfig(kSigmaZ, 0.0),
                                        full_basis_selection(2), 0.0),
                  InvalidArgumentError);
}

TEST_CASE("efficiency is the probability-information product") {
  CHECK(efficiency_xi(0.5, 8.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(efficiency_xi(1.0, 4.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(efficiency_xi(0.0, 7.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(efficiency_xi(1.5, 1.0), InvalidArgumentError);
  CHECK_THROWS_AS(efficiency_xi(0.5, -1.0), InvalidArgumentError);
}

TEST_CASE("efficiency bound report on the saturating protocol") {
  const ThreeLevelConfig cfg =
      ThreeLevelConfig::from_x(1.0, 0.0, 0.7853981633974483, 1e-6);
  const ThreeLevelSetup setup = three_level_setup(cfg);
  const Theorem1Report report = check_theorem1(
      setup.psi_i, EncodingConfig(setup.generator, 0.0, 0.0), setup.ps);
  CHECK(report.bound == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::abs(report.xi - 4.0) < 1e-6);
  CHECK(report.within);
}

TEST_CASE("efficiency bound holds across random spot checks") {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 5);
    const testing::RandomInstance inst =
        testing::random_instance(dim, 77000 + static_cast<std::uint64_t>(trial), 1,
                                 0, 1e-3);
    const Theorem1Report report =
        check_theorem1(inst.psi_i, EncodingConfig(inst.gen, inst.theta), inst.ps);
    CHECK(report.within);
  }
}

TEST_CASE("saturation conditions flag the preserving working point") {
  const ThreeLevelConfig near_opt = ThreeLevelConfig::from_x(1.0, 0.0, 0.05, 1e-8);
  const ThreeLevelSetup setup = three_level_setup(near_opt);
  const SaturationReport report = check_saturation_conditions(
      setup.psi_i, EncodingConfig(setup.generator, 0.0, 0.0), setup.ps);
  CHECK(report.mean_zero);
  CHECK(report.failed_branch_numerators_zero);

  const SaturationReport eigen = check_saturation_conditions(
      Ket::basis_state(2, 0), EncodingConfig(kSigmaZ, 0.0),
      full_basis_selection(2));
  CHECK(!eigen.mean_zero);
  CHECK(std::abs(eigen.mean_abs - 1.0) < 1e-12);
}

TEST_CASE("saturation flags match direct amplitudes on random input") {
  const testing::RandomInstance inst = testing::random_instance(4, 1234, 2, 2);
  const EncodingConfig cfg(inst.gen, inst.theta);
  const SaturationReport report =
      check_saturation_conditions(inst.psi_i, cfg, inst.ps);
  CHECK(std::abs(report.mean_abs - std::abs(inst.gen.expectation(inst.psi_i))) <
        1e-12);
  const Ket psi_theta = encode(inst.psi_i, cfg);
  double max_failed = 0.0;
  for (std::size_t k = 0; k < inst.ps.dim(); ++k) {
    if (inst.ps.is_selected(k)) {
      continue;
    }
    const RawVector apsi = inst.gen.apply(psi_theta);
    max_failed = std::max(
        max_failed, std::abs(inner(inst.ps.basis()[k].amplitudes(), apsi)));
  }
  CHECK(std::abs(report.max_failed_numerator - max_failed) < 1e-12);
}

TEST_CASE("information-cost rate arithmetic and limits") {
  CHECK(info_cost_rate(0.5, 8.0, CostModel{0.0, 1.0, 0.0}) ==
        doctest::Approx(8.0).epsilon(1e-12));
  CHECK(info_cost_rate(1.0, 4.0, CostModel{1.0, 1.0, 0.0}) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // p -> 0 with p * qfi held fixed approaches c / (prep + postselect).
  const double c = 2.0;
  double p = 1.0;
  for (int i = 0; i < 9; ++i) {
    p /= 10.0;
  }
  const double rate = info_cost_rate(p, c / p, CostModel{1.0, 1.0, 1.0});
  CHECK(std::abs(rate - 1.0) < 1e-8);
  CHECK_THROWS_AS(info_cost_rate(0.5, 1.0, CostModel{0.0, 0.0, 0.0}),
                  ZeroCostDenominatorError);
  CHECK_THROWS_AS(info_cost_rate(0.5, 1.0, CostModel{-1.0, 1.0, 0.0}),
                  InvalidArgumentError);
}

TEST_CASE("metrics carry the cost rate when a model is supplied") {
  const ThreeLevelConfig cfg =
      ThreeLevelConfig::from_x(1.0, 0.0, 0.7853981633974483, 1e-6);
  const ThreeLevelSetup setup = three_level_setup(cfg);
  const ProtocolMetrics m = qfi_postselected_derivative(
      setup.psi_i, EncodingConfig(setup.generator, 0.0, 0.0), setup.ps,
      CostModel{0.0, 1.0, 0.0});
  REQUIRE(m.cost_rate.has_value());
  REQUIRE(m.qfi.has_value());
  CHECK(std::abs(*m.cost_rate - *m.qfi) < 1e-9);
}

}  // TEST_SUITE

}  // namespace
}  // namespace psmet
