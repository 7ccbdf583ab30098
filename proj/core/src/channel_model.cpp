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

#include "hbf/channel_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hbf
{

void ClusterConfig::validate() const
{
    if (n_clusters < 1)
        throw std::invalid_argument("ClusterConfig: n_clusters must be >= 1");
    if (rays_per_cluster < 1)
        throw std::invalid_argument("ClusterConfig: rays_per_cluster must be >= 1");
    if (!std::isfinite(gain_variance) || gain_variance <= 0.0)
        throw std::invalid_argument("ClusterConfig: gain_variance must be positive and finite");
    if (!std::isfinite(angular_spread_deg) || angular_spread_deg < 0.0)
        throw std::invalid_argument("ClusterConfig: angular_spread_deg must be >= 0 and finite");
    if (!std::isfinite(element_spacing_wavelengths) || element_spacing_wavelengths <= 0.0)
        throw std::invalid_argument("ClusterConfig: element_spacing_wavelengths must be positive and finite");
}

ChannelMatrix::ChannelMatrix(CMatrix entries, SystemDims dims) : entries_(std::move(entries)), dims_(dims)
{
    const Index n = dims_.total_antennas();
    if (entries_.rows() != n || entries_.cols() != n)
        throw std::invalid_argument("ChannelMatrix: expected " + std::to_string(n) + "x" + std::to_string(n) +
                                    " entries");
}

CMatrix ChannelMatrix::block(int m, int n) const
{
    const int nr = dims_.n_subarrays();
    if (m < 0 || m >= nr || n < 0 || n >= nr)
        throw std::invalid_argument("ChannelMatrix::block: index out of range");
    const int b = dims_.antennas_per_subarray();
    return entries_.block(Index(m) * b, Index(n) * b, b, b);
}

CVector ula_response(double angle, int n_elements, double spacing_wavelengths)
{
    if (n_elements < 1)
        throw std::invalid_argument("ula_response: n_elements must be >= 1");
    CVector a(n_elements);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n_elements));
    const double step = 2.0 * kPi * spacing_wavelengths * std::sin(angle);
    for (int i = 0; i < n_elements; ++i)
        a(i) = std::polar(norm, step * i);
    return a;
}

std::vector<PathParams> sample_path_params(const ClusterConfig &cfg, Rng &rng)
{
    cfg.validate();
    const double spread = cfg.angular_spread_rad();
    std::vector<PathParams> paths;
    paths.reserve(static_cast<std::size_t>(cfg.n_clusters) * cfg.rays_per_cluster);

    for (int c = 0; c < cfg.n_clusters; ++c)
    {
        const double aoa_mean = rng.uniform(-kPi, kPi);
        const double aod_mean = rng.uniform(-kPi, kPi);
        const double eoa_mean = rng.uniform(-kPi / 2, kPi / 2);
        const double eod_mean = rng.uniform(-kPi / 2, kPi / 2);
        for (int r = 0; r < cfg.rays_per_cluster; ++r)
        {
            PathParams p;
            p.cluster = c;
            p.aoa_azimuth_mean = aoa_mean;
            p.aod_azimuth_mean = aod_mean;
            p.gain = rng.complex_normal(cfg.gain_variance);
            p.aoa_azimuth = aoa_mean + rng.laplace(spread);
            p.aod_azimuth = aod_mean + rng.laplace(spread);
            p.aoa_elevation = eoa_mean + rng.laplace(spread);
            p.aod_elevation = eod_mean + rng.laplace(spread);
            paths.push_back(p);
        }
    }
    return paths;
}

ChannelMatrix channel_from_paths(const SystemDims &dims, const ClusterConfig &cfg,
                                 const std::vector<PathParams> &paths)
{
    cfg.validate();
    const int nt = dims.total_antennas();
    CMatrix h = CMatrix::Zero(nt, nt);
    for (const auto &p : paths)
    {
        const CVector ar = ula_response(p.aoa_azimuth, nt, cfg.element_spacing_wavelengths);
        const CVector at = ula_response(p.aod_azimuth, nt, cfg.element_spacing_wavelengths);
        h.noalias() += p.gain * (ar * at.adjoint());
    }
    h *= static_cast<double>(nt) / std::sqrt(static_cast<double>(cfg.n_clusters) * cfg.rays_per_cluster);
    return ChannelMatrix(std::move(h), dims);
}

ChannelMatrix generate_channel(const SystemDims &dims, const ClusterConfig &cfg, Rng &rng)
{
    return channel_from_paths(dims, cfg, sample_path_params(cfg, rng));
}

} // namespace hbf
