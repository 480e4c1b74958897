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

#ifndef PSMET_TESTS_SUPPORT_HPP_
#define PSMET_TESTS_SUPPORT_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "psmet/linalg.hpp"
#include "psmet/rng.hpp"
#include "psmet/states.hpp"

namespace psmet::testing {

// Kronecker product, used to rebuild collective observables independently of
// the library's own tensor construction.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  CMatrix result(da * db);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      for (std::size_t k = 0; k < db; ++k) {
        for (std::size_t l = 0; l < db; ++l) {
          result(i * db + k, j * db + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return result;
}

// Sum over sites of I x ... x local x ... x I on n subsystems.
inline CMatrix collective_sum(const CMatrix& local, std::size_t n) {
  const std::size_t d = local.dim();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= d;
  }
  CMatrix sum(total);
  for (std::size_t site = 0; site < n; ++site) {
    CMatrix term = CMatrix::identity(1);
    for (std::size_t k = 0; k < n; ++k) {
      term = kron(term, k == site ? local : CMatrix::identity(d));
    }
    sum = sum + term;
  }
  return sum;
}

// <psi|M|psi> for a raw matrix.
inline Complex matrix_expectation(const CMatrix& m, const Ket& psi) {
  const RawVector mv = m.apply(psi.amplitudes());
  return inner(psi.amplitudes(), mv);
}

// Bloch vector of a qubit state.
inline std::array<double, 3> bloch_vector(const Ket& psi) {
  const Complex a = psi[0];
  const Complex b = psi[1];
  const Complex cross = std::conj(a) * b;
  return {2.0 * cross.real(), 2.0 * cross.imag(),
          std::norm(a) - std::norm(b)};
}

// Qubit state with the given Bloch vector (assumed unit length).
inline Ket ket_from_bloch(const std::array<double, 3>& v) {
  const double theta = std::acos(std::max(-1.0, std::min(1.0, v[2])));
  const double phi = std::atan2(v[1], v[0]);
  return Ket({Complex(std::cos(theta / 2.0), 0.0),
              std::polar(std::sin(theta / 2.0), phi)});
}

// Signed solid angle of the spherical triangle (u, v, w) by the
// Van Oosterom-Strackee formula; an oracle for Bargmann phases that shares
// no code with the library's arg-based computation.
inline double solid_angle(const std::array<double, 3>& u,
                          const std::array<double, 3>& v,
                          const std::array<double, 3>& w) {
  const double triple = u[0] * (v[1] * w[2] - v[2] * w[1]) -
                        u[1] * (v[0] * w[2] - v[2] * w[0]) +
                        u[2] * (v[0] * w[1] - v[1] * w[0]);
  const double duv = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  const double dvw = v[0] * w[0] + v[1] * w[1] + v[2] * w[2];
  const double duw = u[0] * w[0] + u[1] * w[1] + u[2] * w[2];
  return 2.0 * std::atan2(triple, 1.0 + duv + dvw + duw);
}

// Gaussian-ensemble Hermitian operator rescaled to unit spectral radius, so
// efficiency bounds and error budgets are comparable across draws.
inline HermitianOperator unit_radius_hermitian(std::size_t dim, Rng& rng) {
  HermitianOperator raw(random_hermitian(dim, rng));
  double radius = 0.0;
  for (double a : raw.spectrum().eigenvalues) {
    radius = std::max(radius, std::abs(a));
  }
  if (radius < 1e-8) {
    return raw;  // vanishing draw; effectively impossible for the GUE
  }
  CMatrix scaled = raw.matrix().scaled(Complex(1.0 / radius, 0.0));
  return HermitianOperator(std::move(scaled));
}

// One random postselected-metrology instance.
struct RandomInstance {
  Ket psi_i;
  HermitianOperator gen;
  Postselection ps;
  double theta = 0.0;
};

// Draws (state, unit-radius observable, random basis with a random accepted
// subset, phase) deterministically from the seed.  min_rank limits the
// accepted-set size from below; min_prob rejection-samples the selection
// probability of the encoded state so downstream formulas stay conditioned.
inline RandomInstance random_instance(std::size_t dim, std::uint64_t seed,
                                      std::size_t min_rank = 1,
                                      std::size_t max_rank = 0,
                                      double min_prob = 0.0) {
  if (max_rank == 0 || max_rank > dim) {
    max_rank = dim;
  }
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(seed + 0x9e3779b97f4a7c15ULL * attempt);
    HermitianOperator gen = unit_radius_hermitian(dim, rng);
    Ket psi = random_haar_ket(dim, rng);
    std::vector<Ket> basis = random_orthonormal_basis(dim, rng);
    const std::size_t span = max_rank - min_rank + 1;
    const std::size_t rank =
        min_rank + static_cast<std::size_t>(rng.next_u64() % span);
    std::vector<std::size_t> indices(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      indices[i] = i;
    }
    for (std::size_t i = dim; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.next_u64() % i);
      std::swap(indices[i - 1], indices[j]);
    }
    indices.resize(rank);
    const double theta = (2.0 * rng.uniform() - 1.0) * 3.141592653589793;
    Postselection ps(std::move(basis), indices);

    if (min_prob > 0.0) {
      const Ket psi_theta = encode(psi, EncodingConfig(gen, theta));
      double p = 0.0;
      for (std::size_t k : ps.selected()) {
        p += std::norm(ps.basis()[k].inner(psi_theta));
      }
      if (p < min_prob) {
        continue;
      }
    }
    return RandomInstance{std::move(psi), std::move(gen), std::move(ps), theta};
  }
}

}  // namespace psmet::testing

#endif  // PSMET_TESTS_SUPPORT_HPP_
