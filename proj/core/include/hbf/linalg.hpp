// SPDX-License-Identifier: Apache-2.0
//
// hbf - energy-efficient hybrid beamforming for sub-connected mmWave MIMO
// Copyright (C) 2026 The hbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "hbf/types.hpp"

// Small dense helpers for Hermitian matrices shared by the digital stage and
// the metrics.
namespace hbf::linalg
{

// (A + A^H) / 2
CMatrix hermitian_part(const CMatrix &a);

// Largest |A - A^H| entry.
double hermitian_defect(const CMatrix &a);

// Eigenvalues (ascending) of the Hermitian part of A.
RVector hermitian_eigenvalues(const CMatrix &a);

// Inverse of a Hermitian positive definite matrix. Throws SingularMatrixError
// when the smallest eigenvalue is not above rel_tol * largest.
CMatrix hermitian_inverse(const CMatrix &a, double rel_tol = 1e-14);

// Inverse square root of a Hermitian positive definite matrix.
CMatrix hermitian_inverse_sqrt(const CMatrix &a, double rel_tol = 1e-14);

// Solves A X = B for Hermitian positive semidefinite A (LDLT). Throws
// SingularMatrixError when A is numerically singular.
CMatrix hermitian_solve(const CMatrix &a, const CMatrix &b, double rel_tol = 1e-14);

// ln det(A) for Hermitian positive definite A, via eigenvalues.
double hermitian_log_det(const CMatrix &a);

// ln |det(A)| for a general square matrix (partial-pivot LU).
double log_abs_det(const CMatrix &a);

} // namespace hbf::linalg
