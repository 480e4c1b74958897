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
#include "psmet/linalg.hpp"
#include "support.hpp"

namespace psmet {
namespace {

CMatrix sigma_x() {
  CMatrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

double reconstruction_residual(const HermitianOperator& op) {
  const Spectrum& s = op.spectrum();
  CMatrix rebuilt(op.dim());
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    rebuilt = rebuilt + outer(s.eigenvectors[k], s.eigenvectors[k])
                            .scaled(Complex(s.eigenvalues[k], 0.0));
  }
  return (rebuilt - op.matrix()).max_abs();
}

TEST_SUITE("linalg") {

TEST_CASE("diagonal operator eigensystem is sorted ascending") {
  const HermitianOperator op = HermitianOperator::diagonal({3.0, -1.0, 0.0});
  const Spectrum& s = op.spectrum();
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(s.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(s.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-12));
  // Permuted standard basis vectors, phase-fixed real positive.
  CHECK(std::abs(s.eigenvectors[0][1] - Complex(1.0, 0.0)) < 1e-10);
  CHECK(std::abs(s.eigenvectors[1][2] - Complex(1.0, 0.0)) < 1e-10);
  CHECK(std::abs(s.eigenvectors[2][0] - Complex(1.0, 0.0)) < 1e-10);
}

TEST_CASE("two-level flip operator has +-1 eigensystem") {
  const HermitianOperator op(sigma_x());
  const Spectrum& s = op.spectrum();
  CHECK(s.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
  const Ket minus = Ket::normalized({Complex(1.0, 0.0), Complex(-1.0, 0.0)});
  const Ket plus = Ket::normalized({Complex(1.0, 0.0), Complex(1.0, 0.0)});
  CHECK(std::abs(s.eigenvectors[0].inner(minus)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(s.eigenvectors[1].inner(plus)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("eigenvector equation and reconstruction hold on random input") {
  Rng rng(101);
  const HermitianOperator op(random_hermitian(6, rng));
  const Spectrum& s = op.spectrum();
  for (std::size_t k = 0; k < 6; ++k) {
    const RawVector av = op.apply(s.eigenvectors[k]);
    double residual = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
      residual = std::max(residual,
                          std::abs(av[i] - s.eigenvalues[k] * s.eigenvectors[k][i]));
    }
    CHECK(residual < 1e-9);
  }
  CHECK(reconstruction_residual(op) < 1e-9);
}

TEST_CASE("reconstruction residual stays small across dimensions") {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 7);
    Rng rng(7000 + static_cast<std::uint64_t>(trial));
    const HermitianOperator op(random_hermitian(dim, rng));
    CHECK(reconstruction_residual(op) < 1e-9);
  }
}

TEST_CASE("eigenvectors are pairwise orthonormal") {
  Rng rng(55);
  const HermitianOperator op(random_hermitian(8, rng));
  const Spectrum& s = op.spectrum();
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const Complex g = s.eigenvectors[i].inner(s.eigenvectors[j]);
      CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("degenerate spectra decompose deterministically") {
  const HermitianOperator op(CMatrix::identity(4));
  const Spectrum& first = op.spectrum();
  const HermitianOperator again(CMatrix::identity(4));
  const Spectrum& second = again.spectrum();
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(first.eigenvalues[k] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(first.eigenvectors[k][i] - second.eigenvectors[k][i]) == 0.0);
    }
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  CMatrix m(2);
  m(0, 1) = Complex(1.0, 0.0);
  m(1, 0) = Complex(0.5, 0.0);
  CHECK_THROWS_AS(HermitianOperator{m}, NonHermitianError);
}

TEST_CASE("eigendecomposition dimension cap is enforced") {
  CHECK_THROWS_AS(eigendecompose(CMatrix::identity(33)), DimensionCapError);
}

TEST_CASE("generator exponential at the quarter period") {
  const HermitianOperator sz = HermitianOperator::diagonal({1.0, -1.0});
  const CMatrix u = unitary_from_generator(sz, 1.5707963267948966);
  CHECK(std::abs(u(0, 0) - Complex(0.0, -1.0)) < 1e-12);
  CHECK(std::abs(u(1, 1) - Complex(0.0, 1.0)) < 1e-12);
  CHECK(std::abs(u(0, 1)) < 1e-12);
  CHECK(std::abs(u(1, 0)) < 1e-12);
}

TEST_CASE("generator exponential at zero is the identity") {
  Rng rng(7);
  const HermitianOperator op(random_hermitian(4, rng));
  const CMatrix u = unitary_from_generator(op, 0.0);
  CHECK((u - CMatrix::identity(4)).max_abs() < 1e-12);
}

TEST_CASE("generator exponential is unitary and commutes with its generator") {
  Rng rng(13);
  const HermitianOperator op(random_hermitian(4, rng));
  const CMatrix u = unitary_from_generator(op, 0.3);
  CHECK((u.adjoint() * u - CMatrix::identity(4)).max_abs() < 1e-10);
  CHECK((u * op.matrix() * u.adjoint() - op.matrix()).max_abs() < 1e-9);
}

TEST_CASE("opposite phases compose to the identity") {
  Rng rng(29);
  const HermitianOperator op(random_hermitian(5, rng));
  const CMatrix forward = unitary_from_generator(op, 0.77);
  const CMatrix backward = unitary_from_generator(op, -0.77);
  CHECK((forward * backward - CMatrix::identity(5)).max_abs() < 1e-10);
}

TEST_CASE("operator norm of the square") {
  CHECK(operator_norm_sq(HermitianOperator::diagonal({1.0, -1.0})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(operator_norm_sq(HermitianOperator::diagonal({2.0, 0.0, -2.0})) ==
        doctest::Approx(4.0).epsilon(1e-12));
  Rng rng(91);
  const HermitianOperator op(random_hermitian(5, rng));
  double expected = 0.0;
  for (double a : op.spectrum().eigenvalues) {
    expected = std::max(expected, a * a);
  }
  CHECK(std::abs(operator_norm_sq(op) - expected) < 1e-10);
}

TEST_CASE("operator norm dominates every second moment") {
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(400 + static_cast<std::uint64_t>(trial));
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 5);
    const HermitianOperator op(random_hermitian(dim, rng));
    const Ket psi = random_haar_ket(dim, rng);
    CHECK(operator_norm_sq(op) + 1e-10 >= op.second_moment(psi));
  }
}

TEST_CASE("kets are normalized at construction") {
  const Ket psi = Ket::normalized({Complex(3.0, 0.0), Complex(4.0, 0.0)});
  CHECK(std::abs(psi[0] - Complex(0.6, 0.0)) < 1e-12);
  CHECK(std::abs(psi[1] - Complex(0.8, 0.0)) < 1e-12);
  CHECK_THROWS_AS(Ket({Complex(3.0, 0.0), Complex(4.0, 0.0)}), NormalizationError);
  CHECK_THROWS_AS(Ket::normalized({Complex(0.0, 0.0), Complex(0.0, 0.0)}),
                  NullVectorError);
}

TEST_CASE("seeded state generation is deterministic") {
  const Ket single = random_haar_ket(1, 99);
  CHECK(std::abs(std::abs(single[0]) - 1.0) < 1e-12);
  const Ket a = random_haar_ket(4, 42);
  const Ket b = random_haar_ket(4, 42);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a[i] == b[i]);
  }
  const Ket c = random_haar_ket(4, 43);
  double diff = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    diff += std::abs(a[i] - c[i]);
  }
  CHECK(diff > 1e-6);
}

TEST_CASE("random states reproduce the uniform first moment") {
  double mean = 0.0;
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    const Ket psi = random_haar_ket(3, 1000 + static_cast<std::uint64_t>(i));
    mean += std::norm(psi[0]);
  }
  mean /= samples;
  CHECK(std::abs(mean - 1.0 / 3.0) < 0.02);
}

TEST_CASE("random bases are orthonormal") {
  Rng rng(17);
  const std::vector<Ket> basis = random_orthonormal_basis(5, rng);
  REQUIRE(basis.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(std::abs(basis[i].inner(basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("raw generator stream is stable across runs") {
  Rng a(2024);
  Rng b(2024);
  for (int i = 0; i < 16; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  Rng c(2024);
  Rng d(2025);
  bool differ = false;
  for (int i = 0; i < 4; ++i) {
    differ = differ || (c.next_u64() != d.next_u64());
  }
  CHECK(differ);
}

}  // TEST_SUITE

}  // namespace
}  // namespace psmet
