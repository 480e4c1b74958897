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

#include "psmet/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace psmet {

Postselection::Postselection(std::vector<Ket> basis, std::vector<std::size_t> selected)
    : basis_(std::move(basis)), selected_(std::move(selected)) {
  const std::size_t dim = basis_.size();
  if (dim == 0) {
    throw BasisError("postselection basis must not be empty");
  }
  for (const Ket& f : basis_) {
    if (f.dim() != dim) {
      throw BasisError("postselection basis must contain exactly dim vectors of "
                       "matching dimension");
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const double expected = (i == j) ? 1.0 : 0.0;
      const double deviation = std::abs(basis_[i].inner(basis_[j]) - Complex(expected, 0.0));
      if (deviation > tol::kOrthonormality) {
        throw BasisError("postselection basis is not orthonormal: |<f_" +
                         std::to_string(i) + "|f_" + std::to_string(j) +
                         "> - delta| = " + std::to_string(deviation));
      }
    }
  }
  if (selected_.empty()) {
    throw InvalidArgumentError("postselection needs at least one accepted index");
  }
  std::sort(selected_.begin(), selected_.end());
  for (std::size_t i = 0; i < selected_.size(); ++i) {
    if (selected_[i] >= dim) {
      throw InvalidArgumentError("accepted index " + std::to_string(selected_[i]) +
                                 " out of range for basis of size " +
                                 std::to_string(dim));
    }
    if (i > 0 && selected_[i] == selected_[i - 1]) {
      throw InvalidArgumentError("accepted index " + std::to_string(selected_[i]) +
                                 " appears more than once");
    }
  }
  selected_mask_.assign(dim, false);
  for (std::size_t k : selected_) {
    selected_mask_[k] = true;
  }
}

CMatrix Postselection::projector() const {
  CMatrix f(dim());
  for (std::size_t k : selected_) {
    const RawVector& amp = basis_[k].amplitudes();
    for (std::size_t i = 0; i < dim(); ++i) {
      for (std::size_t j = 0; j < dim(); ++j) {
        f(i, j) += amp[i] * std::conj(amp[j]);
      }
    }
  }
  return f;
}

Ket encode(const Ket& psi_i, const EncodingConfig& cfg) {
  if (psi_i.dim() != cfg.generator.dim()) {
    throw DimensionMismatchError("state dimension " + std::to_string(psi_i.dim()) +
                                 " does not match generator dimension " +
                                 std::to_string(cfg.generator.dim()));
  }
  const Spectrum& spec = cfg.generator.spectrum();
  const double theta = cfg.theta();
  RawVector out(psi_i.dim(), Complex(0.0, 0.0));
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    const Complex coeff = spec.eigenvectors[k].inner(psi_i) *
                          std::exp(Complex(0.0, -theta * spec.eigenvalues[k]));
    const RawVector& vec = spec.eigenvectors[k].amplitudes();
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += coeff * vec[i];
    }
  }
  return Ket(std::move(out));
}

RawVector apply_projector(const Ket& psi, const Postselection& ps) {
  if (psi.dim() != ps.dim()) {
    throw DimensionMismatchError("state dimension " + std::to_string(psi.dim()) +
                                 " does not match postselection dimension " +
                                 std::to_string(ps.dim()));
  }
  RawVector out(psi.dim(), Complex(0.0, 0.0));
  for (std::size_t k : ps.selected()) {
    const Complex amplitude = ps.basis()[k].inner(psi);
    const RawVector& vec = ps.basis()[k].amplitudes();
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += amplitude * vec[i];
    }
  }
  return out;
}

PostselectionOutcome postselect(const Ket& psi_theta, const Postselection& ps) {
  if (psi_theta.dim() != ps.dim()) {
    throw DimensionMismatchError("state dimension " + std::to_string(psi_theta.dim()) +
                                 " does not match postselection dimension " +
                                 std::to_string(ps.dim()));
  }
  PostselectionOutcome outcome;
  outcome.per_branch.reserve(ps.selected().size());
  for (std::size_t k : ps.selected()) {
    const Complex amplitude = ps.basis()[k].inner(psi_theta);
    const double probability = std::norm(amplitude);
    outcome.per_branch.push_back({k, amplitude, probability});
    outcome.probability += probability;
  }
  if (outcome.probability >= tol::kProbabilityFloor) {
    RawVector projected(psi_theta.dim(), Complex(0.0, 0.0));
    for (const BranchOutcome& branch : outcome.per_branch) {
      const RawVector& vec = ps.basis()[branch.index].amplitudes();
      for (std::size_t i = 0; i < projected.size(); ++i) {
        projected[i] += branch.amplitude * vec[i];
      }
    }
    outcome.state = Ket::normalized(std::move(projected));
  }
  return outcome;
}

std::vector<Ket> complete_basis(std::vector<Ket> partial, std::size_t dim) {
  if (dim == 0) {
    throw InvalidArgumentError("a basis needs at least one dimension");
  }
  if (partial.size() > dim) {
    throw InvalidArgumentError("partial basis already has more than dim vectors");
  }
  for (const Ket& f : partial) {
    if (f.dim() != dim) {
      throw DimensionMismatchError("partial basis vector dimension does not match");
    }
  }
  std::vector<Ket> basis = std::move(partial);
  for (std::size_t candidate = 0; candidate < dim && basis.size() < dim; ++candidate) {
    RawVector v(dim, Complex(0.0, 0.0));
    v[candidate] = Complex(1.0, 0.0);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Ket& q : basis) {
        const Complex coeff = inner(q.amplitudes(), v);
        for (std::size_t i = 0; i < dim; ++i) {
          v[i] -= coeff * q[i];
        }
      }
    }
    const double remainder = norm(v);
    if (remainder < tol::kPhasePivot) {
      continue;  // Candidate already spanned.
    }
    for (Complex& z : v) {
      z /= remainder;
    }
    // Library-wide phase convention: first amplitude above the pivot
    // threshold made real positive.
    std::size_t pivot = dim;
    for (std::size_t i = 0; i < dim; ++i) {
      if (std::abs(v[i]) > tol::kPhasePivot) {
        pivot = i;
        break;
      }
    }
    if (pivot < dim) {
      const Complex correction = std::conj(v[pivot] / std::abs(v[pivot]));
      for (Complex& z : v) {
        z *= correction;
      }
      v[pivot] = Complex(std::abs(v[pivot]), 0.0);
    }
    basis.push_back(Ket(std::move(v)));
  }
  if (basis.size() != dim) {
    throw BasisError("could not complete the partial set to a full basis");
  }
  return basis;
}

}  // namespace psmet
