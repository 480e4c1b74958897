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

#ifndef PSMET_ERRORS_HPP_
#define PSMET_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace psmet {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands whose dimensions do not match.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// A matrix that was required to be Hermitian is not.
class NonHermitianError : public Error {
 public:
  using Error::Error;
};

// The iterative eigensolver exhausted its sweep budget.
class NoConvergenceError : public Error {
 public:
  using Error::Error;
};

// A vector with (numerically) zero norm where a state was required.
class NullVectorError : public Error {
 public:
  using Error::Error;
};

// A ket whose amplitudes are not normalized.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// A postselection basis that is incomplete, mis-sized, or not orthonormal.
class BasisError : public Error {
 public:
  using Error::Error;
};

// Postselection probability below the floor where the renormalized state and
// its Fisher information are undefined.
class VanishingPostselectionError : public Error {
 public:
  using Error::Error;
};

// Pre- and postselected states whose overlap is too small for a weak value.
class OrthogonalPrePostError : public Error {
 public:
  using Error::Error;
};

// An information-cost rate with a vanishing denominator.
class ZeroCostDenominatorError : public Error {
 public:
  using Error::Error;
};

// The singular postselection angle where the closed-form limits do not exist.
class AlphaSingularError : public Error {
 public:
  using Error::Error;
};

// A requested dimension beyond the desk-scale caps.
class DimensionCapError : public Error {
 public:
  using Error::Error;
};

// A generator spectrum that violates a non-degeneracy requirement.
class DegenerateSpectrumError : public Error {
 public:
  using Error::Error;
};

// Any other argument that violates a documented precondition.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace psmet

#endif  // PSMET_ERRORS_HPP_
