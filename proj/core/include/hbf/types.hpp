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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hbf
{

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;

// Raised when a matrix that must be inverted (or square-rooted) is singular.
class SingularMatrixError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Raised when an iterative routine exhausts its iteration budget or produces
// non-finite values.
class NumericFailure : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Array dimensions of the sub-connected transceiver. Both ends use the same
// layout: n_subarrays RF chains (= data streams), each driving its own group
// of antennas_per_subarray phase-shifted antennas.
class SystemDims
{
public:
    SystemDims(int n_subarrays, int antennas_per_subarray)
        : n_subarrays_(n_subarrays), antennas_per_subarray_(antennas_per_subarray)
    {
        if (n_subarrays < 1)
            throw std::invalid_argument("SystemDims: n_subarrays must be >= 1");
        if (antennas_per_subarray < 1)
            throw std::invalid_argument("SystemDims: antennas_per_subarray must be >= 1");
    }

    int n_subarrays() const { return n_subarrays_; }
    int antennas_per_subarray() const { return antennas_per_subarray_; }
    int total_antennas() const { return n_subarrays_ * antennas_per_subarray_; }

    // Ratio N_RF / N_t: the squared norm of one constant-modulus sub-array vector.
    double power_scale() const
    {
        return static_cast<double>(antennas_per_subarray_) / static_cast<double>(total_antennas());
    }

    friend bool operator==(const SystemDims &, const SystemDims &) = default;

private:
    int n_subarrays_;
    int antennas_per_subarray_;
};

} // namespace hbf
