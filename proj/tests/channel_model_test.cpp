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

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "hbf/channel_model.hpp"
#include "test_support.hpp"

using namespace hbf;

TEST(UlaResponse, SingleElementIsOne)
{
    const CVector a = ula_response(0.7, 1, 0.5);
    ASSERT_EQ(a.size(), 1);
    EXPECT_NEAR(std::abs(a(0) - cd(1.0, 0.0)), 0.0, 1e-15);
}

TEST(UlaResponse, BroadsideIsFlat)
{
    const CVector a = ula_response(0.0, 4, 0.5);
    for (Index i = 0; i < 4; ++i)
        EXPECT_NEAR(std::abs(a(i) - cd(0.5, 0.0)), 0.0, 1e-15);
}

TEST(UlaResponse, InnerProductMatchesTermwiseSum)
{
    const double p1 = 0.0, p2 = kPi / 6;
    const int n = 8;
    const cd ip = ula_response(p1, n, 0.5).dot(ula_response(p2, n, 0.5));
    cd acc(0.0, 0.0);
    for (int i = 0; i < n; ++i)
        acc += std::exp(cd(0.0, 2.0 * kPi * 0.5 * i * (std::sin(p2) - std::sin(p1)))) / static_cast<double>(n);
    EXPECT_NEAR(std::abs(ip), std::abs(acc), 1e-14);
}

TEST(UlaResponse, UnitNormUpTo1024Elements)
{
    Rng rng(3);
    for (int n : {1, 2, 7, 64, 333, 1024})
    {
        const CVector a = ula_response(rng.uniform(-kPi, kPi), n, 0.5);
        EXPECT_NEAR(a.norm(), 1.0, 1e-12) << "n = " << n;
    }
}

TEST(UlaResponse, RejectsEmptyArray)
{
    EXPECT_THROW(ula_response(0.1, 0, 0.5), std::invalid_argument);
}

TEST(ClusterConfig, Validation)
{
    ClusterConfig c;
    EXPECT_NO_THROW(c.validate());
    c.n_clusters = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.angular_spread_deg = -1.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.element_spacing_wavelengths = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(SamplePathParams, CountAndMeanRange)
{
    ClusterConfig cfg;
    Rng rng(5);
    const auto paths = sample_path_params(cfg, rng);
    ASSERT_EQ(paths.size(), 80u);
    for (const auto &p : paths)
    {
        EXPECT_GE(p.aoa_azimuth_mean, -kPi);
        EXPECT_LT(p.aoa_azimuth_mean, kPi);
        EXPECT_GE(p.aod_azimuth_mean, -kPi);
        EXPECT_LT(p.aod_azimuth_mean, kPi);
    }
    for (int c = 0; c < 8; ++c)
        for (int r = 1; r < 10; ++r)
            EXPECT_EQ(paths[c * 10 + r].aoa_azimuth_mean, paths[c * 10].aoa_azimuth_mean);
}

TEST(SamplePathParams, ZeroSpreadPinsRaysToClusterMean)
{
    ClusterConfig cfg;
    cfg.angular_spread_deg = 0.0;
    Rng rng(6);
    for (const auto &p : sample_path_params(cfg, rng))
    {
        EXPECT_EQ(p.aoa_azimuth, p.aoa_azimuth_mean);
        EXPECT_EQ(p.aod_azimuth, p.aod_azimuth_mean);
    }
}

TEST(SamplePathParams, OffsetSpreadAndGainStatistics)
{
    ClusterConfig cfg;
    cfg.n_clusters = 100;
    cfg.rays_per_cluster = 1000; // 1e5 rays
    cfg.gain_variance = 2.0;
    Rng rng(7);
    const auto paths = sample_path_params(cfg, rng);
    const double n = static_cast<double>(paths.size());

    double s2a = 0.0, s2d = 0.0, g2 = 0.0;
    cd gsum(0.0, 0.0);
    for (const auto &p : paths)
    {
        s2a += std::pow(p.aoa_azimuth - p.aoa_azimuth_mean, 2);
        s2d += std::pow(p.aod_azimuth - p.aod_azimuth_mean, 2);
        gsum += p.gain;
        g2 += std::norm(p.gain);
    }
    const double sd = cfg.angular_spread_rad();
    EXPECT_NEAR(std::sqrt(s2a / n), sd, 0.03 * sd);
    EXPECT_NEAR(std::sqrt(s2d / n), sd, 0.03 * sd);

    // Real and imaginary parts each have variance sigma^2 / 2.
    const double sigma_part = std::sqrt(cfg.gain_variance / 2.0);
    EXPECT_NEAR(gsum.real() / n, 0.0, 3.0 * sigma_part / std::sqrt(n));
    EXPECT_NEAR(gsum.imag() / n, 0.0, 3.0 * sigma_part / std::sqrt(n));
    EXPECT_NEAR(g2 / n, cfg.gain_variance, 0.03 * cfg.gain_variance);
}

TEST(GenerateChannel, SinglePathIsRankOneWithNormNt)
{
    const SystemDims dims(4, 4);
    ClusterConfig cfg;
    cfg.n_clusters = 1;
    cfg.rays_per_cluster = 1;
    PathParams p;
    p.gain = {1.0, 0.0};
    p.aoa_azimuth = 0.4;
    p.aod_azimuth = -1.1;
    const ChannelMatrix h = channel_from_paths(dims, cfg, {p});
    EXPECT_NEAR(h.entries().norm(), 16.0, 1e-12);
    Eigen::JacobiSVD<CMatrix> svd(h.entries());
    const RVector s = svd.singularValues();
    EXPECT_NEAR(s(0), 16.0, 1e-10);
    EXPECT_LT(s(1), 1e-10);
}

TEST(GenerateChannel, DeterministicPerSeed)
{
    const SystemDims dims(4, 8);
    ClusterConfig cfg;
    Rng a(99), b(99), c(100);
    const ChannelMatrix ha = generate_channel(dims, cfg, a);
    const ChannelMatrix hb = generate_channel(dims, cfg, b);
    const ChannelMatrix hc = generate_channel(dims, cfg, c);
    EXPECT_TRUE(ha.entries() == hb.entries());
    EXPECT_FALSE(ha.entries() == hc.entries());
}

TEST(GenerateChannel, BlocksTileTheMatrix)
{
    const SystemDims dims(3, 5);
    Rng rng(1);
    const ChannelMatrix h = generate_channel(dims, ClusterConfig{}, rng);
    CMatrix rebuilt(15, 15);
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
        {
            const CMatrix b = h.block(m, n);
            ASSERT_EQ(b.rows(), 5);
            rebuilt.block(m * 5, n * 5, 5, 5) = b;
        }
    EXPECT_TRUE(rebuilt == h.entries());
    EXPECT_THROW(h.block(3, 0), std::invalid_argument);
    EXPECT_THROW(h.block(0, -1), std::invalid_argument);
}

TEST(GenerateChannel, RejectsWrongShape)
{
    EXPECT_THROW(ChannelMatrix(CMatrix::Zero(4, 4), SystemDims(2, 3)), std::invalid_argument);
}

TEST(GenerateChannel, MeanSquaredNormIsNtSquared)
{
    const SystemDims dims(4, 4);
    ClusterConfig cfg;
    Rng rng(2024);
    const int draws = 3000;
    double acc = 0.0;
    for (int i = 0; i < draws; ++i)
        acc += generate_channel(dims, cfg, rng).entries().squaredNorm();
    EXPECT_NEAR(acc / draws / 256.0, 1.0, 0.05);
}

TEST(SystemDims, Invariants)
{
    const SystemDims d(8, 8);
    EXPECT_EQ(d.total_antennas(), 64);
    EXPECT_DOUBLE_EQ(d.power_scale(), 0.125);
    EXPECT_THROW(SystemDims(0, 4), std::invalid_argument);
    EXPECT_THROW(SystemDims(4, 0), std::invalid_argument);
}
