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

#include "psmet/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psmet/errors.hpp"
#include "psmet/fisher.hpp"

namespace psmet {

namespace {

void require_dims(const Ket& psi, const HermitianOperator& gen,
                  const Postselection& ps) {
  if (psi.dim() != gen.dim() || psi.dim() != ps.dim()) {
    throw DimensionMismatchError("state, observable, and postselection "
                                 "dimensions do not match");
  }
}

}  // namespace

KDTable kd_distribution(const Ket& psi, const HermitianOperator& gen,
                        const Postselection& ps) {
  require_dims(psi, gen, ps);
  const Spectrum& spectrum = gen.spectrum();
  const std::size_t dim = psi.dim();
  KDTable table;
  table.row_eigenvalues = spectrum.eigenvalues;
  table.row_basis = spectrum.eigenvectors;
  table.col_basis = ps.basis();
  table.entries.assign(dim, std::vector<Complex>(dim, Complex(0.0, 0.0)));
  for (std::size_t m = 0; m < dim; ++m) {
    const Ket& a = spectrum.eigenvectors[m];
    const Complex bra_psi_a = psi.inner(a);
    for (std::size_t k = 0; k < dim; ++k) {
      const Ket& f = ps.basis()[k];
      table.entries[m][k] = bra_psi_a * a.inner(f) * f.inner(psi);
    }
  }
  return table;
}

ExtendedKDTable extended_kd_distribution(const Ket& psi,
                                         const HermitianOperator& gen,
                                         const Postselection& ps) {
  require_dims(psi, gen, ps);
  const Spectrum& spectrum = gen.spectrum();
  const std::size_t dim = psi.dim();
  // c[j] = <a_j|psi>, g[j][k] = <f_k|a_j>.
  std::vector<Complex> c(dim);
  std::vector<std::vector<Complex>> g(dim, std::vector<Complex>(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    c[j] = spectrum.eigenvectors[j].inner(psi);
    for (std::size_t k = 0; k < dim; ++k) {
      g[j][k] = ps.basis()[k].inner(spectrum.eigenvectors[j]);
    }
  }
  ExtendedKDTable table;
  table.eigenvalues = spectrum.eigenvalues;
  table.row_basis = spectrum.eigenvectors;
  table.col_basis = ps.basis();
  table.entries.assign(
      dim, std::vector<std::vector<Complex>>(
               dim, std::vector<Complex>(dim, Complex(0.0, 0.0))));
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t l = 0; l < dim; ++l) {
      const Complex middle = c[j] * std::conj(c[l]);
      for (std::size_t k = 0; k < dim; ++k) {
        table.entries[j][l][k] = g[j][k] * middle * std::conj(g[l][k]);
      }
    }
  }
  return table;
}

double postselected_qfi_from_quasiprob(const ExtendedKDTable& table,
                                       const std::vector<double>& eigenvalues,
                                       const std::vector<std::size_t>& selected,
                                       double p_ps) {
  const std::size_t dim = table.entries.size();
  if (eigenvalues.size() != dim) {
    throw DimensionMismatchError("eigenvalue list does not match table size");
  }
  if (selected.empty()) {
    throw InvalidArgumentError("selected column set must be non-empty");
  }
  for (std::size_t k : selected) {
    if (k >= dim) {
      throw InvalidArgumentError("selected column index " + std::to_string(k) +
                                 " out of range");
    }
  }
  if (p_ps < tol::kProbabilityFloor) {
    throw VanishingPostselectionError(
        "postselection probability " + std::to_string(p_ps) +
        " is below the floor; the postselected QFI is undefined");
  }
  Complex quadratic(0.0, 0.0);
  Complex linear(0.0, 0.0);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t l = 0; l < dim; ++l) {
      Complex column_sum(0.0, 0.0);
      for (std::size_t k : selected) {
        column_sum += table.entries[j][l][k];
      }
      quadratic += column_sum * eigenvalues[j] * eigenvalues[l];
      linear += column_sum * eigenvalues[l];
    }
  }
  double qfi = 4.0 * quadratic.real() / p_ps -
               4.0 * std::norm(linear) / (p_ps * p_ps);
  if (qfi < 0.0) {
    qfi = 0.0;
  }
  return qfi;
}

std::vector<std::vector<double>> wigner_formula(const Ket& psi,
                                                const HermitianOperator& gen,
                                                const Postselection& ps) {
  require_dims(psi, gen, ps);
  const Spectrum& spectrum = gen.spectrum();
  const std::size_t dim = psi.dim();
  std::vector<std::vector<double>> q(dim, std::vector<double>(dim, 0.0));
  for (std::size_t m = 0; m < dim; ++m) {
    const Ket& a = spectrum.eigenvectors[m];
    const double weight = std::norm(a.inner(psi));
    for (std::size_t k = 0; k < dim; ++k) {
      q[m][k] = weight * std::norm(a.inner(ps.basis()[k]));
    }
  }
  return q;
}

std::vector<std::vector<double>> quantum_modification(const Ket& psi,
                                                      const HermitianOperator& gen,
                                                      const Postselection& ps) {
  require_dims(psi, gen, ps);
  const Spectrum& spectrum = gen.spectrum();
  const std::size_t dim = psi.dim();
  const CMatrix rho = outer(psi, psi);
  const CMatrix eye = CMatrix::identity(dim);
  std::vector<std::vector<double>> mod(dim, std::vector<double>(dim, 0.0));
  for (std::size_t m = 0; m < dim; ++m) {
    const Ket& a = spectrum.eigenvectors[m];
    const CMatrix p = outer(a, a);
    const CMatrix q = eye - p;
    // Nonselective projective update of rho under {P, 1 - P}; the
    // difference rho - rho' carries exactly the coherences P rho Q + Q rho P.
    const CMatrix rho_prime = p * rho * p + q * rho * q;
    const CMatrix delta = rho - rho_prime;
    for (std::size_t k = 0; k < dim; ++k) {
      const Ket& f = ps.basis()[k];
      const CMatrix field = outer(f, f);
      mod[m][k] = 0.5 * (delta * field).trace().real();
    }
  }
  return mod;
}

IdentityCheckResult kd_identity_check(const Ket& psi, const HermitianOperator& gen,
                                      const Postselection& ps) {
  const KDTable kd = kd_distribution(psi, gen, ps);
  const std::vector<std::vector<double>> wigner = wigner_formula(psi, gen, ps);
  const std::vector<std::vector<double>> mod = quantum_modification(psi, gen, ps);
  IdentityCheckResult result;
  for (std::size_t m = 0; m < kd.entries.size(); ++m) {
    for (std::size_t k = 0; k < kd.entries[m].size(); ++k) {
      const double residual =
          std::abs(kd.entries[m][k].real() - wigner[m][k] - mod[m][k]);
      result.max_residual = std::max(result.max_residual, residual);
      result.max_abs_imag =
          std::max(result.max_abs_imag, std::abs(kd.entries[m][k].imag()));
    }
  }
  result.imag_flagged = result.max_abs_imag > tol::kClassicalImag;
  return result;
}

ClassicalityReport classicality_report(const KDTable& table,
                                       double negative_tolerance,
                                       double imag_tolerance) {
  if (negative_tolerance < 0.0 || imag_tolerance < 0.0) {
    throw InvalidArgumentError("classicality tolerances must be non-negative");
  }
  if (table.entries.empty()) {
    throw InvalidArgumentError("classicality of an empty table is undefined");
  }
  ClassicalityReport report;
  report.negative_tolerance = negative_tolerance;
  report.imag_tolerance = imag_tolerance;
  report.min_real = table.entries[0][0].real();
  for (const std::vector<Complex>& row : table.entries) {
    for (const Complex& entry : row) {
      report.min_real = std::min(report.min_real, entry.real());
      report.max_abs_imag = std::max(report.max_abs_imag, std::abs(entry.imag()));
    }
  }
  report.classical = (report.min_real >= -negative_tolerance) &&
                     (report.max_abs_imag <= imag_tolerance);
  return report;
}

Theorem2Result theorem2_check(const Ket& psi_theta, const HermitianOperator& gen,
                              const Postselection& ps) {
  const std::vector<WeakValueRecord> records =
      weak_value_records(psi_theta, gen, ps);
  double p = 0.0;
  for (const WeakValueRecord& r : records) {
    p += r.probability;
  }
  if (p < tol::kProbabilityFloor) {
    throw VanishingPostselectionError(
        "postselection probability " + std::to_string(p) +
        " is below the floor; the uniform-condition check is undefined");
  }
  Theorem2Result result;
  double pair_sum = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      pair_sum += std::norm(records[i].numerator * records[j].overlap -
                            records[j].numerator * records[i].overlap);
    }
  }
  result.xi = 4.0 * pair_sum / p;

  const Spectrum& spectrum = gen.spectrum();
  bool uniform = true;
  for (const WeakValueRecord& r : records) {
    if (std::abs(r.overlap) <= tol::kUniformOverlapFloor) {
      continue;
    }
    const Ket& f = ps.basis()[r.index];
    for (const Ket& a : spectrum.eigenvectors) {
      const Complex product = a.inner(psi_theta) * f.inner(a);
      if (std::abs(product - r.overlap) >= tol::kUniformCondition) {
        uniform = false;
        break;
      }
    }
    if (!uniform) {
      break;
    }
  }
  result.uniform_cond48 = uniform;
  return result;
}

}  // namespace psmet
