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

#include "hbf/linalg.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace hbf::linalg
{

CMatrix hermitian_part(const CMatrix &a)
{
    return (a + a.adjoint()) * 0.5;
}

double hermitian_defect(const CMatrix &a)
{
    if (a.size() == 0)
        return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

RVector hermitian_eigenvalues(const CMatrix &a)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

namespace
{

// Eigen-decomposes A and rejects it unless every eigenvalue is above
// rel_tol * max(|lambda|) (and positive).
Eigen::SelfAdjointEigenSolver<CMatrix> checked_pd_eig(const CMatrix &a, double rel_tol, const char *what)
{
    if (!a.allFinite())
        throw SingularMatrixError(std::string(what) + ": matrix has non-finite entries");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
    if (es.info() != Eigen::Success)
        throw SingularMatrixError(std::string(what) + ": eigendecomposition failed");
    const RVector &ev = es.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    if (ev.size() > 0 && (scale == 0.0 || ev(0) <= rel_tol * scale))
        throw SingularMatrixError(std::string(what) + ": matrix is not positive definite (min eigenvalue " +
                                  std::to_string(ev(0)) + ")");
    return es;
}

} // namespace

CMatrix hermitian_inverse(const CMatrix &a, double rel_tol)
{
    auto es = checked_pd_eig(a, rel_tol, "hermitian_inverse");
    const CMatrix &v = es.eigenvectors();
    return hermitian_part(v * es.eigenvalues().cwiseInverse().asDiagonal() * v.adjoint());
}

CMatrix hermitian_inverse_sqrt(const CMatrix &a, double rel_tol)
{
    auto es = checked_pd_eig(a, rel_tol, "hermitian_inverse_sqrt");
    const CMatrix &v = es.eigenvectors();
    const RVector d = es.eigenvalues().cwiseSqrt().cwiseInverse();
    return hermitian_part(v * d.asDiagonal() * v.adjoint());
}

CMatrix hermitian_solve(const CMatrix &a, const CMatrix &b, double rel_tol)
{
    if (!a.allFinite() || !b.allFinite())
        throw SingularMatrixError("hermitian_solve: non-finite input");
    Eigen::LDLT<CMatrix> ldlt(hermitian_part(a));
    if (ldlt.info() != Eigen::Success)
        throw SingularMatrixError("hermitian_solve: factorization failed");
    const RVector d = ldlt.vectorD().real();
    const double scale = d.size() > 0 ? d.cwiseAbs().maxCoeff() : 0.0;
    if (d.size() > 0 && (scale == 0.0 || d.cwiseAbs().minCoeff() <= rel_tol * scale))
        throw SingularMatrixError("hermitian_solve: matrix is singular");
    return ldlt.solve(b);
}

double hermitian_log_det(const CMatrix &a)
{
    const RVector ev = hermitian_eigenvalues(a);
    if (ev.size() > 0 && ev(0) <= 0.0)
        throw SingularMatrixError("hermitian_log_det: matrix is not positive definite");
    return ev.array().log().sum();
}

double log_abs_det(const CMatrix &a)
{
    Eigen::PartialPivLU<CMatrix> lu(a);
    const CMatrix &m = lu.matrixLU();
    double acc = 0.0;
    for (Index i = 0; i < m.rows(); ++i)
    {
        const double d = std::abs(m(i, i));
        if (d == 0.0)
            throw SingularMatrixError("log_abs_det: matrix is singular");
        acc += std::log(d);
    }
    return acc;
}

} // namespace hbf::linalg
