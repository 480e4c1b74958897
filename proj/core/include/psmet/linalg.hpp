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

#ifndef PSMET_LINALG_HPP_
#define PSMET_LINALG_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "psmet/errors.hpp"
#include "psmet/rng.hpp"
#include "psmet/tolerances.hpp"

namespace psmet {

using Complex = std::complex<double>;
using RawVector = std::vector<Complex>;

// Dense square complex matrix, row-major. Small by design: the library works
// at desk scale, so no sparse or blocked paths exist.
class CMatrix {
 public:
  CMatrix() = default;
  // Zero matrix of the given dimension.
  explicit CMatrix(std::size_t dim);
  // Wraps existing row-major data; data.size() must equal dim*dim.
  CMatrix(std::size_t dim, RawVector data);

  static CMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  CMatrix adjoint() const;
  CMatrix operator*(const CMatrix& rhs) const;
  CMatrix operator+(const CMatrix& rhs) const;
  CMatrix operator-(const CMatrix& rhs) const;
  CMatrix scaled(Complex factor) const;

  // Matrix-vector product.
  RawVector apply(const RawVector& v) const;

  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  // Frobenius norm of the strictly off-diagonal part.
  double offdiag_norm() const;
  // True when |A - A^dag| stays within tolerance relative to max(1, max|A|).
  bool is_hermitian(double tolerance = tol::kHermiticity) const;

 private:
  std::size_t dim_ = 0;
  RawVector data_;
};

// Normalized pure state.
class Ket {
 public:
  Ket() = default;
  // Validates normalization within tol::kNormalization.
  explicit Ket(RawVector amplitudes);

  // Normalizes the given amplitudes; throws NullVectorError when the norm is
  // numerically zero.
  static Ket normalized(RawVector amplitudes);
  static Ket basis_state(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  const RawVector& amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  // <this|other>.
  Complex inner(const Ket& other) const;

 private:
  RawVector amplitudes_;
};

// Inner product <a|b> of raw amplitude vectors (conjugate-linear in a).
Complex inner(const RawVector& a, const RawVector& b);
double norm(const RawVector& v);

// Eigensystem of a Hermitian operator: eigenvalues ascending, eigenvectors in
// matching order, each phase-fixed so its first amplitude above
// tol::kPhasePivot is real positive. Within a degenerate cluster (consecutive
// gap below tol::kDegeneracyGap) vectors are ordered by (first pivot index,
// descending pivot magnitude, pivot argument, lexicographic amplitudes) so
// outputs are deterministic.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<Ket> eigenvectors;
};

// Hermitian operator with a lazily computed, cached spectrum. The cache is
// write-once and idempotent: concurrent callers may race to fill it, but every
// winner computes the same value, so sharing across threads is safe.
class HermitianOperator {
 public:
  // Validates Hermiticity within tol::kHermiticity.
  explicit HermitianOperator(CMatrix matrix);

  static HermitianOperator diagonal(const std::vector<double>& values);

  HermitianOperator(const HermitianOperator& other);
  HermitianOperator& operator=(const HermitianOperator& other);
  HermitianOperator(HermitianOperator&& other) noexcept;
  HermitianOperator& operator=(HermitianOperator&& other) noexcept;

  std::size_t dim() const noexcept { return matrix_.dim(); }
  const CMatrix& matrix() const noexcept { return matrix_; }

  // Eigendecomposition, computed on first use and cached. Dimensions above
  // tol::kEigenDimCap are rejected (construction itself is not capped).
  const Spectrum& spectrum() const;

  RawVector apply(const RawVector& v) const { return matrix_.apply(v); }
  RawVector apply(const Ket& psi) const { return matrix_.apply(psi.amplitudes()); }

  // <psi|A|psi> (real by Hermiticity).
  double expectation(const Ket& psi) const;
  // <psi|A^2|psi> = |A psi|^2.
  double second_moment(const Ket& psi) const;

 private:
  CMatrix matrix_;
  mutable std::mutex cache_mutex_;
  mutable std::shared_ptr<const Spectrum> cache_;
};

// Cyclic-Jacobi eigendecomposition of a Hermitian matrix. Throws
// DimensionCapError above tol::kEigenDimCap, NonHermitianError for
// non-Hermitian input, NoConvergenceError if the sweep budget is exhausted.
Spectrum eigendecompose(const CMatrix& matrix);

// exp(-i*theta*A) built from the spectrum of A.
CMatrix unitary_from_generator(const HermitianOperator& gen, double theta);

// Operator norm of A^2, i.e. (max_k |a_k|)^2.
double operator_norm_sq(const HermitianOperator& op);

// |a><b|.
CMatrix outer(const Ket& a, const Ket& b);

// Haar-random pure state (independent standard complex Gaussian amplitudes,
// normalized), deterministic for a fixed seed.
Ket random_haar_ket(std::size_t dim, std::uint64_t seed);
Ket random_haar_ket(std::size_t dim, Rng& rng);

// Gaussian-unitary-ensemble Hermitian matrix: N(0,1) diagonal, off-diagonal
// (g1 + i g2)/sqrt(2). Draw order is fixed (row-major upper triangle).
CMatrix random_hermitian(std::size_t dim, Rng& rng);

// Haar-distributed orthonormal basis via Gram-Schmidt on Gaussian vectors.
std::vector<Ket> random_orthonormal_basis(std::size_t dim, Rng& rng);

}  // namespace psmet

#endif  // PSMET_LINALG_HPP_
