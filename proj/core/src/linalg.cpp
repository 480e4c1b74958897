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

#include "psmet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace psmet {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatchError(std::string(what) + ": dimensions " +
                                 std::to_string(a) + " and " +
                                 std::to_string(b) + " do not match");
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex(0.0, 0.0)) {}

CMatrix::CMatrix(std::size_t dim, RawVector data) : dim_(dim), data_(std::move(data)) {
  if (data_.size() != dim_ * dim_) {
    throw InvalidArgumentError("matrix data size " + std::to_string(data_.size()) +
                               " does not fill a " + std::to_string(dim_) + "x" +
                               std::to_string(dim_) + " matrix");
  }
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = Complex(1.0, 0.0);
  }
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      out(j, i) = std::conj((*this)(i, j));
    }
  }
  return out;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
  require_same_dim(dim_, rhs.dim_, "matrix product");
  CMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const Complex aik = (*this)(i, k);
      if (aik == Complex(0.0, 0.0)) {
        continue;
      }
      for (std::size_t j = 0; j < dim_; ++j) {
        out(i, j) += aik * rhs(k, j);
      }
    }
  }
  return out;
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
  require_same_dim(dim_, rhs.dim_, "matrix sum");
  CMatrix out(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = data_[i] + rhs.data_[i];
  }
  return out;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
  require_same_dim(dim_, rhs.dim_, "matrix difference");
  CMatrix out(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = data_[i] - rhs.data_[i];
  }
  return out;
}

CMatrix CMatrix::scaled(Complex factor) const {
  CMatrix out(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = factor * data_[i];
  }
  return out;
}

RawVector CMatrix::apply(const RawVector& v) const {
  require_same_dim(dim_, v.size(), "matrix-vector product");
  RawVector out(dim_, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < dim_; ++i) {
    Complex acc(0.0, 0.0);
    const Complex* row = data_.data() + i * dim_;
    for (std::size_t j = 0; j < dim_; ++j) {
      acc += row[j] * v[j];
    }
    out[i] = acc;
  }
  return out;
}

Complex CMatrix::trace() const {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    acc += (*this)(i, i);
  }
  return acc;
}

double CMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const Complex& z : data_) {
    acc += std::norm(z);
  }
  return std::sqrt(acc);
}

double CMatrix::max_abs() const {
  double best = 0.0;
  for (const Complex& z : data_) {
    best = std::max(best, std::abs(z));
  }
  return best;
}

double CMatrix::offdiag_norm() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i != j) {
        acc += std::norm((*this)(i, j));
      }
    }
  }
  return std::sqrt(acc);
}

bool CMatrix::is_hermitian(double tolerance) const {
  const double scale = std::max(1.0, max_abs());
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tolerance * scale) {
        return false;
      }
    }
  }
  return true;
}

Complex inner(const RawVector& a, const RawVector& b) {
  require_same_dim(a.size(), b.size(), "inner product");
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::conj(a[i]) * b[i];
  }
  return acc;
}

double norm(const RawVector& v) {
  double acc = 0.0;
  for (const Complex& z : v) {
    acc += std::norm(z);
  }
  return std::sqrt(acc);
}

Ket::Ket(RawVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) {
    throw InvalidArgumentError("a state needs at least one amplitude");
  }
  const double n = norm(amplitudes_);
  if (std::abs(n - 1.0) > tol::kNormalization) {
    throw NormalizationError("ket norm " + std::to_string(n) + " deviates from 1");
  }
}

Ket Ket::normalized(RawVector amplitudes) {
  if (amplitudes.empty()) {
    throw InvalidArgumentError("a state needs at least one amplitude");
  }
  const double n = norm(amplitudes);
  if (n < 1e-12) {
    throw NullVectorError("cannot normalize a numerically null vector");
  }
  for (Complex& z : amplitudes) {
    z /= n;
  }
  return Ket(std::move(amplitudes));
}

Ket Ket::basis_state(std::size_t dim, std::size_t index) {
  if (dim == 0 || index >= dim) {
    throw InvalidArgumentError("basis index " + std::to_string(index) +
                               " out of range for dimension " + std::to_string(dim));
  }
  RawVector amp(dim, Complex(0.0, 0.0));
  amp[index] = Complex(1.0, 0.0);
  return Ket(std::move(amp));
}

Complex Ket::inner(const Ket& other) const {
  return psmet::inner(amplitudes_, other.amplitudes_);
}

namespace {

std::size_t pivot_index(const RawVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > tol::kPhasePivot) {
      return i;
    }
  }
  return v.size();
}

// Rotate the global phase so the pivot amplitude is real positive.
void fix_phase(RawVector& v) {
  const std::size_t p = pivot_index(v);
  if (p == v.size()) {
    return;
  }
  const Complex phase = v[p] / std::abs(v[p]);
  const Complex correction = std::conj(phase);
  for (Complex& z : v) {
    z *= correction;
  }
  // Clean the pivot exactly onto the real axis.
  v[p] = Complex(std::abs(v[p]), 0.0);
}

// Deterministic ordering for eigenvectors inside a degenerate cluster; assumes
// both vectors are already phase-fixed.
bool cluster_less(const RawVector& u, const RawVector& v) {
  const std::size_t pu = pivot_index(u);
  const std::size_t pv = pivot_index(v);
  if (pu != pv) {
    return pu < pv;
  }
  if (pu < u.size()) {
    const double au = std::abs(u[pu]);
    const double av = std::abs(v[pv]);
    if (au != av) {
      return au > av;
    }
    const double argu = std::arg(u[pu]);
    const double argv = std::arg(v[pv]);
    if (argu != argv) {
      return argu < argv;
    }
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].real() != v[i].real()) {
      return u[i].real() < v[i].real();
    }
    if (u[i].imag() != v[i].imag()) {
      return u[i].imag() < v[i].imag();
    }
  }
  return false;
}

}  // namespace

Spectrum eigendecompose(const CMatrix& matrix) {
  const std::size_t n = matrix.dim();
  if (n == 0) {
    throw InvalidArgumentError("cannot decompose an empty matrix");
  }
  if (n > tol::kEigenDimCap) {
    throw DimensionCapError("eigendecomposition supports dimensions up to " +
                            std::to_string(tol::kEigenDimCap) + ", got " +
                            std::to_string(n));
  }
  if (!matrix.is_hermitian()) {
    throw NonHermitianError("eigendecomposition requires a Hermitian matrix");
  }

  CMatrix a = matrix;
  CMatrix v = CMatrix::identity(n);
  const double frob0 = a.frobenius_norm();
  const double threshold = tol::kJacobiOffdiagRel * frob0;

  bool converged = false;
  for (int sweep = 0; sweep < tol::kJacobiMaxSweeps; ++sweep) {
    if (a.offdiag_norm() <= threshold) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double beta = std::abs(apq);
        if (beta == 0.0) {
          continue;
        }
        // Fold the phase of a_pq into the rotation so the 2x2 subproblem is
        // the real symmetric one: with w = a_pq/|a_pq| the plane rotation is
        //   R = [[c, s*w], [-s*conj(w), c]]
        // and R^dag A R zeroes the (p,q) entry.
        const Complex w = apq / beta;
        const double alpha = a(p, p).real();
        const double gamma = a(q, q).real();
        const double tau = (gamma - alpha) / (2.0 * beta);
        const double sign = (tau >= 0.0) ? 1.0 : -1.0;
        const double t = sign / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t i = 0; i < n; ++i) {
          const Complex aip = a(i, p);
          const Complex aiq = a(i, q);
          a(i, p) = c * aip - s * std::conj(w) * aiq;
          a(i, q) = s * w * aip + c * aiq;
        }
        // Restore the rotated rows through Hermiticity instead of a second
        // matrix pass, then place the exact 2x2 results.
        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) {
            continue;
          }
          a(p, i) = std::conj(a(i, p));
          a(q, i) = std::conj(a(i, q));
        }
        a(p, p) = Complex(alpha - t * beta, 0.0);
        a(q, q) = Complex(gamma + t * beta, 0.0);
        a(p, q) = Complex(0.0, 0.0);
        a(q, p) = Complex(0.0, 0.0);

        for (std::size_t i = 0; i < n; ++i) {
          const Complex vip = v(i, p);
          const Complex viq = v(i, q);
          v(i, p) = c * vip - s * std::conj(w) * viq;
          v(i, q) = s * w * vip + c * viq;
        }
      }
    }
  }
  if (!converged && a.offdiag_norm() > threshold) {
    throw NoConvergenceError("Jacobi eigensolver did not converge within " +
                             std::to_string(tol::kJacobiMaxSweeps) + " sweeps");
  }

  std::vector<double> values(n);
  std::vector<RawVector> vectors(n, RawVector(n));
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = a(k, k).real();
    for (std::size_t i = 0; i < n; ++i) {
      vectors[k][i] = v(i, k);
    }
    const double column_norm = norm(vectors[k]);
    for (Complex& z : vectors[k]) {
      z /= column_norm;
    }
    fix_phase(vectors[k]);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return values[x] < values[y];
  });
  // Re-order degenerate clusters deterministically.
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start;
    while (end + 1 < n &&
           values[order[end + 1]] - values[order[end]] < tol::kDegeneracyGap) {
      ++end;
    }
    if (end > start) {
      std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                       order.begin() + static_cast<std::ptrdiff_t>(end) + 1,
                       [&](std::size_t x, std::size_t y) {
                         return cluster_less(vectors[x], vectors[y]);
                       });
    }
    start = end + 1;
  }

  Spectrum spectrum;
  spectrum.eigenvalues.reserve(n);
  spectrum.eigenvectors.reserve(n);
  for (std::size_t k : order) {
    spectrum.eigenvalues.push_back(values[k]);
    spectrum.eigenvectors.push_back(Ket(vectors[k]));
  }
  return spectrum;
}

HermitianOperator::HermitianOperator(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.dim() == 0) {
    throw InvalidArgumentError("an operator needs at least one dimension");
  }
  if (!matrix_.is_hermitian()) {
    throw NonHermitianError("operator matrix is not Hermitian");
  }
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& values) {
  CMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    m(i, i) = Complex(values[i], 0.0);
  }
  return HermitianOperator(std::move(m));
}

HermitianOperator::HermitianOperator(const HermitianOperator& other)
    : matrix_(other.matrix_) {
  std::lock_guard<std::mutex> lock(other.cache_mutex_);
  cache_ = other.cache_;
}

HermitianOperator& HermitianOperator::operator=(const HermitianOperator& other) {
  if (this != &other) {
    std::shared_ptr<const Spectrum> snapshot;
    {
      std::lock_guard<std::mutex> lock(other.cache_mutex_);
      snapshot = other.cache_;
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    matrix_ = other.matrix_;
    cache_ = std::move(snapshot);
  }
  return *this;
}

HermitianOperator::HermitianOperator(HermitianOperator&& other) noexcept {
  std::lock_guard<std::mutex> lock(other.cache_mutex_);
  matrix_ = std::move(other.matrix_);
  cache_ = std::move(other.cache_);
}

HermitianOperator& HermitianOperator::operator=(HermitianOperator&& other) noexcept {
  if (this != &other) {
    std::shared_ptr<const Spectrum> snapshot;
    CMatrix matrix;
    {
      std::lock_guard<std::mutex> lock(other.cache_mutex_);
      snapshot = std::move(other.cache_);
      matrix = std::move(other.matrix_);
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    matrix_ = std::move(matrix);
    cache_ = std::move(snapshot);
  }
  return *this;
}

const Spectrum& HermitianOperator::spectrum() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!cache_) {
    cache_ = std::make_shared<const Spectrum>(eigendecompose(matrix_));
  }
  return *cache_;
}

double HermitianOperator::expectation(const Ket& psi) const {
  return psmet::inner(psi.amplitudes(), apply(psi)).real();
}

double HermitianOperator::second_moment(const Ket& psi) const {
  const RawVector image = apply(psi);
  double acc = 0.0;
  for (const Complex& z : image) {
    acc += std::norm(z);
  }
  return acc;
}

CMatrix unitary_from_generator(const HermitianOperator& gen, double theta) {
  const Spectrum& spec = gen.spectrum();
  const std::size_t n = gen.dim();
  CMatrix u(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex phase = std::exp(Complex(0.0, -theta * spec.eigenvalues[k]));
    const RawVector& vec = spec.eigenvectors[k].amplitudes();
    for (std::size_t i = 0; i < n; ++i) {
      const Complex left = phase * vec[i];
      for (std::size_t j = 0; j < n; ++j) {
        u(i, j) += left * std::conj(vec[j]);
      }
    }
  }
  return u;
}

double operator_norm_sq(const HermitianOperator& op) {
  double best = 0.0;
  for (double a : op.spectrum().eigenvalues) {
    best = std::max(best, a * a);
  }
  return best;
}

CMatrix outer(const Ket& a, const Ket& b) {
  require_same_dim(a.dim(), b.dim(), "outer product");
  CMatrix m(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      m(i, j) = a[i] * std::conj(b[j]);
    }
  }
  return m;
}

Ket random_haar_ket(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_haar_ket(dim, rng);
}

Ket random_haar_ket(std::size_t dim, Rng& rng) {
  if (dim == 0) {
    throw InvalidArgumentError("a state needs at least one dimension");
  }
  while (true) {
    RawVector amp(dim);
    for (Complex& z : amp) {
      const double re = rng.normal();
      const double im = rng.normal();
      z = Complex(re, im);
    }
    if (norm(amp) > 1e-12) {
      return Ket::normalized(std::move(amp));
    }
  }
}

CMatrix random_hermitian(std::size_t dim, Rng& rng) {
  if (dim == 0) {
    throw InvalidArgumentError("an operator needs at least one dimension");
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = Complex(rng.normal(), 0.0);
    for (std::size_t j = i + 1; j < dim; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      m(i, j) = Complex(re * inv_sqrt2, im * inv_sqrt2);
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

std::vector<Ket> random_orthonormal_basis(std::size_t dim, Rng& rng) {
  if (dim == 0) {
    throw InvalidArgumentError("a basis needs at least one dimension");
  }
  std::vector<RawVector> basis;
  basis.reserve(dim);
  while (basis.size() < dim) {
    RawVector candidate(dim);
    for (Complex& z : candidate) {
      const double re = rng.normal();
      const double im = rng.normal();
      z = Complex(re, im);
    }
    // Modified Gram-Schmidt, twice for numerical orthogonality.
    for (int pass = 0; pass < 2; ++pass) {
      for (const RawVector& q : basis) {
        const Complex coeff = inner(q, candidate);
        for (std::size_t i = 0; i < dim; ++i) {
          candidate[i] -= coeff * q[i];
        }
      }
    }
    const double remainder = norm(candidate);
    if (remainder < 1e-8) {
      continue;  // Degenerate draw; try again.
    }
    for (Complex& z : candidate) {
      z /= remainder;
    }
    basis.push_back(std::move(candidate));
  }
  std::vector<Ket> kets;
  kets.reserve(dim);
  for (RawVector& v : basis) {
    kets.push_back(Ket(std::move(v)));
  }
  return kets;
}

}  // namespace psmet
