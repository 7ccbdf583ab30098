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

#include <cmath>

#include "hbf/analog_stage.hpp"
#include "hbf/channel_model.hpp"
#include "hbf/digital_stage.hpp"
#include "hbf/rng.hpp"
#include "hbf/types.hpp"

namespace hbf::test
{

inline CMatrix random_matrix(Index rows, Index cols, Rng &rng, double variance = 1.0)
{
    CMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            m(i, j) = rng.complex_normal(variance);
    return m;
}

// A A^H + shift I.
inline CMatrix random_pd(Index n, Rng &rng, double shift = 0.1)
{
    const CMatrix a = random_matrix(n, n, rng);
    return a * a.adjoint() + shift * CMatrix::Identity(n, n);
}

inline CVector random_constant_modulus(Index n, double modulus, Rng &rng)
{
    CVector v(n);
    for (Index i = 0; i < n; ++i)
        v(i) = std::polar(modulus, rng.uniform(0.0, 2.0 * kPi));
    return v;
}

// Effective channel with a generic (not block-structured) noise covariance.
inline EffectiveChannel random_effective(Index n, Rng &rng, double noise_scale = 0.5, double power_scale = 0.25)
{
    EffectiveChannel eff;
    eff.entries = random_matrix(n, n, rng);
    eff.noise_cov = noise_scale * random_pd(n, rng, 0.5);
    eff.power_scale = power_scale;
    eff.noise_power = noise_scale;
    return eff;
}

inline double rel_diff(double a, double b)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// log det of a general square matrix by naive Gaussian elimination with
// partial pivoting; independent of Eigen's decompositions.
inline double naive_log_abs_det(CMatrix a)
{
    const Index n = a.rows();
    double acc = 0.0;
    for (Index k = 0; k < n; ++k)
    {
        Index p = k;
        for (Index i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k)))
                p = i;
        if (p != k)
            a.row(p).swap(a.row(k));
        const cd pivot = a(k, k);
        acc += std::log(std::abs(pivot));
        for (Index i = k + 1; i < n; ++i)
        {
            const cd f = a(i, k) / pivot;
            for (Index j = k; j < n; ++j)
                a(i, j) -= f * a(k, j);
        }
    }
    return acc;
}

} // namespace hbf::test
