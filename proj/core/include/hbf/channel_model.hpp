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

#include <vector>

#include "hbf/rng.hpp"
#include "hbf/types.hpp"

namespace hbf
{

// Parameters of the narrowband clustered (extended Saleh-Valenzuela) channel.
struct ClusterConfig
{
    int n_clusters = 8;
    int rays_per_cluster = 10;
    double gain_variance = 1.0;              // sigma_alpha^2
    double angular_spread_deg = 5.0;         // per-ray Laplacian standard deviation
    double element_spacing_wavelengths = 0.5;

    // Throws std::invalid_argument on a non-positive count or a negative or
    // non-finite spread/spacing/variance.
    void validate() const;

    double angular_spread_rad() const { return angular_spread_deg * kPi / 180.0; }

    friend bool operator==(const ClusterConfig &, const ClusterConfig &) = default;
};

// One propagation path. Azimuth angles feed the ULA responses; elevation
// angles are sampled and kept for completeness only.
struct PathParams
{
    int cluster = 0;
    cd gain{0.0, 0.0};
    double aoa_azimuth = 0.0;
    double aod_azimuth = 0.0;
    double aoa_elevation = 0.0;
    double aod_elevation = 0.0;
    // Cluster mean angles the ray was drawn around.
    double aoa_azimuth_mean = 0.0;
    double aod_azimuth_mean = 0.0;
};

// N_t x N_t channel with N_RF x N_RF block access.
class ChannelMatrix
{
public:
    ChannelMatrix(CMatrix entries, SystemDims dims);

    const CMatrix &entries() const { return entries_; }
    const SystemDims &dims() const { return dims_; }

    // H_{m,n}: block row m, block column n (0-based).
    CMatrix block(int m, int n) const;

private:
    CMatrix entries_;
    SystemDims dims_;
};

// Normalized uniform linear array response:
// a(i) = exp(j 2 pi spacing i sin(angle)) / sqrt(n), i = 0..n-1.
CVector ula_response(double angle, int n_elements, double spacing_wavelengths);

// Draws n_clusters * rays_per_cluster paths, cluster by cluster.
std::vector<PathParams> sample_path_params(const ClusterConfig &cfg, Rng &rng);

// H = N_t / sqrt(N_cl N_ray) * sum alpha a_r a_t^H over the given paths.
ChannelMatrix channel_from_paths(const SystemDims &dims, const ClusterConfig &cfg,
                                 const std::vector<PathParams> &paths);

ChannelMatrix generate_channel(const SystemDims &dims, const ClusterConfig &cfg, Rng &rng);

} // namespace hbf
