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
#include <set>

#include "hbf/rng.hpp"

using namespace hbf;

TEST(Rng, SplitMixMatchesReferenceOutputs)
{
    // First outputs of the reference SplitMix64 generator seeded with 0.
    EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(splitmix64(0x9E3779B97F4A7C15ULL), 0x6E789E6AA1B965F4ULL);
}

TEST(Rng, SameSeedSameStream)
{
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i)
    {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        differs = differs || x != c.next_u64();
    }
    EXPECT_TRUE(differs);
}

TEST(Rng, TrialSeedsAreDistinct)
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i)
        seen.insert(derive_trial_seed(1, i));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_NE(derive_trial_seed(1, 0), derive_trial_seed(2, 0));
}

TEST(Rng, UniformStaysInRange)
{
    Rng r(7);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
    {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Rng, NormalMoments)
{
    Rng r(9);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double x = r.normal();
        s += x;
        s2 += x * x;
    }
    EXPECT_NEAR(s / n, 0.0, 3.0 / std::sqrt(n));
    EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(Rng, LaplaceStddevAndDegenerateSpread)
{
    Rng r(11);
    EXPECT_EQ(r.laplace(0.0), 0.0);
    const int n = 200000;
    const double sd = 0.3;
    double s = 0.0, s2 = 0.0, sabs = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double x = r.laplace(sd);
        s += x;
        s2 += x * x;
        sabs += std::abs(x);
    }
    EXPECT_NEAR(s / n, 0.0, 3.0 * sd / std::sqrt(n));
    EXPECT_NEAR(std::sqrt(s2 / n), sd, 0.02 * sd);
    // E|X| = b = sd / sqrt(2) for a Laplacian.
    EXPECT_NEAR(sabs / n, sd / std::sqrt(2.0), 0.02 * sd);
}
