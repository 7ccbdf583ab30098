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
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "hbf/analog_stage.hpp"
#include "test_support.hpp"

using namespace hbf;
using hbf::test::random_constant_modulus;
using hbf::test::random_matrix;
using hbf::test::random_pd;

namespace
{

ChannelMatrix random_channel(const SystemDims &dims, std::uint64_t seed)
{
    Rng rng(seed);
    return ChannelMatrix(random_matrix(dims.total_antennas(), dims.total_antennas(), rng), dims);
}

// Minimum of v^H M v over the phase of v(l) on a uniform grid.
double grid_minimum(CVector v, const CMatrix &m, Index l, int points)
{
    const double mod = std::abs(v(l));
    double best = std::numeric_limits<double>::infinity();
    for (int g = 0; g < points; ++g)
    {
        v(l) = std::polar(mod, 2.0 * kPi * g / points);
        best = std::min(best, quadratic_form(v, m));
    }
    return best;
}

} // namespace

TEST(AnalogBeamformer, BlockDiagonalConstantModulus)
{
    const SystemDims dims(3, 4);
    Rng rng(1);
    const auto f = AnalogBeamformer::random(dims, Side::transmit, rng);
    const CMatrix m = f.matrix();
    ASSERT_EQ(m.rows(), 12);
    ASSERT_EQ(m.cols(), 3);
    const double mod = 1.0 / std::sqrt(12.0);
    for (Index col = 0; col < 3; ++col)
    {
        int nonzero_blocks = 0;
        for (Index blk = 0; blk < 3; ++blk)
        {
            const CMatrix b = m.block(blk * 4, col, 4, 1);
            if (b.norm() == 0.0)
                continue;
            ++nonzero_blocks;
            EXPECT_EQ(blk, col);
            for (Index i = 0; i < 4; ++i)
                EXPECT_NEAR(std::abs(b(i, 0)), mod, 1e-15);
        }
        EXPECT_EQ(nonzero_blocks, 1);
    }
    // G_R^H G_R = (N_RF/N_t) I
    EXPECT_LT((m.adjoint() * m - dims.power_scale() * CMatrix::Identity(3, 3)).norm(), 1e-12);
}

TEST(AnalogBeamformer, SetSteeringKeepsOnlyPhase)
{
    const SystemDims dims(2, 3);
    AnalogBeamformer g(dims, Side::receive);
    CVector v(3);
    v << cd(3.0, 4.0), cd(0.0, -2.0), cd(-1.0, 0.0);
    g.set_steering(1, v);
    const CVector s = g.steering(1);
    for (Index i = 0; i < 3; ++i)
    {
        EXPECT_NEAR(std::abs(s(i)), 1.0 / std::sqrt(6.0), 1e-15);
        EXPECT_NEAR(std::arg(s(i)), std::arg(v(i)), 1e-15);
    }
    EXPECT_THROW(g.set_steering(2, v), std::invalid_argument);
    EXPECT_THROW(g.set_phase(0, 3, 0.0), std::invalid_argument);
    EXPECT_THROW(AnalogBeamformer(dims, Side::receive, RMatrix::Zero(3, 2)), std::invalid_argument);
}

TEST(LeakageMatrix, SingleSubarrayIsZero)
{
    const SystemDims dims(1, 4);
    const auto h = random_channel(dims, 2);
    Rng rng(3);
    const auto f = AnalogBeamformer::random(dims, Side::transmit, rng);
    EXPECT_EQ(leakage_matrix(Side::receive, 0, h, f).norm(), 0.0);
    EXPECT_EQ(leakage_matrix(Side::transmit, 0, h, f).norm(), 0.0);
}

TEST(LeakageMatrix, ZeroChannelIsZero)
{
    const SystemDims dims(3, 2);
    const ChannelMatrix h(CMatrix::Zero(6, 6), dims);
    Rng rng(3);
    const auto f = AnalogBeamformer::random(dims, Side::transmit, rng);
    for (int k = 0; k < 3; ++k)
        EXPECT_EQ(leakage_matrix(Side::receive, k, h, f).norm(), 0.0);
}

TEST(LeakageMatrix, MatchesNaiveSummation)
{
    for (int nr : {2, 3})
    {
        const SystemDims dims(nr, 3);
        const auto h = random_channel(dims, 10 + nr);
        Rng rng(20 + nr);
        const auto f = AnalogBeamformer::random(dims, Side::transmit, rng);
        const auto g = AnalogBeamformer::random(dims, Side::receive, rng);
        const Index b = 3;
        for (int k = 0; k < nr; ++k)
        {
            CMatrix rx = CMatrix::Zero(b, b), tx = CMatrix::Zero(b, b);
            for (int j = 0; j < nr; ++j)
            {
                if (j == k)
                    continue;
                const CMatrix hkj = h.entries().block(k * b, j * b, b, b);
                const CMatrix hjk = h.entries().block(j * b, k * b, b, b);
                const CVector fj = f.matrix().block(j * b, j, b, 1);
                const CVector gj = g.matrix().block(j * b, j, b, 1);
                for (Index r = 0; r < b; ++r)
                    for (Index c = 0; c < b; ++c)
                    {
                        cd u_r(0, 0), u_c(0, 0), w_r(0, 0), w_c(0, 0);
                        for (Index s = 0; s < b; ++s)
                        {
                            u_r += hkj(r, s) * fj(s);
                            u_c += hkj(c, s) * fj(s);
                            w_r += std::conj(hjk(s, r)) * gj(s);
                            w_c += std::conj(hjk(s, c)) * gj(s);
                        }
                        rx(r, c) += u_r * std::conj(u_c);
                        tx(r, c) += w_r * std::conj(w_c);
                    }
            }
            const CMatrix mrx = leakage_matrix(Side::receive, k, h, f);
            const CMatrix mtx = leakage_matrix(Side::transmit, k, h, g);
            EXPECT_LT((mrx - rx).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_LT((mtx - tx).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_LT((mrx - mrx.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
            Eigen::SelfAdjointEigenSolver<CMatrix> es(mrx);
            EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
        }
    }
}

TEST(LeakageMatrix, RejectsBadIndex)
{
    const SystemDims dims(2, 2);
    const auto h = random_channel(dims, 1);
    const AnalogBeamformer f(dims, Side::transmit);
    EXPECT_THROW(leakage_matrix(Side::receive, 2, h, f), std::invalid_argument);
    EXPECT_THROW(leakage_matrix(Side::receive, -1, h, f), std::invalid_argument);
}

TEST(PhaseUpdate, TwoElementExample)
{
    CMatrix m(2, 2);
    m << cd(2, 0), cd(1, 1), cd(1, -1), cd(3, 0);
    const double mod = 1.0 / std::sqrt(2.0);
    CVector v(2);
    v << std::polar(mod, 0.3), std::polar(mod, 0.0);
    const double phase = optimal_element_phase(v, m, 0);
    EXPECT_NEAR(phase, -3.0 * kPi / 4.0, 1e-15);

    // Fine grid search over the phase of the updated element.
    const int points = 1 << 16;
    double best = std::numeric_limits<double>::infinity(), best_phase = 0.0;
    CVector w = v;
    for (int gi = 0; gi < points; ++gi)
    {
        const double p = 2.0 * kPi * gi / points;
        w(0) = std::polar(mod, p);
        const double q = quadratic_form(w, m);
        if (q < best)
        {
            best = q;
            best_phase = p;
        }
    }
    const double wrapped = std::remainder(best_phase - phase, 2.0 * kPi);
    EXPECT_LE(std::abs(wrapped), 2.0 * kPi / points);
    const cd updated = phase_element_update(v, m, 0);
    EXPECT_NEAR(std::abs(updated), mod, 1e-15);
}

TEST(PhaseUpdate, DiagonalMatrixUsesZeroArgument)
{
    CMatrix m = CMatrix::Zero(3, 3);
    m.diagonal() << cd(1, 0), cd(2, 0), cd(5, 0);
    Rng rng(4);
    CVector v = random_constant_modulus(3, 0.5, rng);
    const double before = quadratic_form(v, m);
    EXPECT_NEAR(optimal_element_phase(v, m, 1), -kPi, 0.0);
    v(1) = phase_element_update(v, m, 1);
    EXPECT_NEAR(quadratic_form(v, m), before, 1e-14);
}

TEST(PhaseUpdate, SingleElementLeavesObjective)
{
    CMatrix m(1, 1);
    m << cd(2.5, 0.0);
    CVector v(1);
    v << std::polar(0.5, 1.0);
    const double before = quadratic_form(v, m);
    v(0) = phase_element_update(v, m, 0);
    EXPECT_NEAR(quadratic_form(v, m), before, 1e-15);
    EXPECT_THROW(optimal_element_phase(v, m, 1), std::invalid_argument);
}

TEST(PhaseUpdate, NeverIncreasesObjective)
{
    Rng rng(5);
    for (int trial = 0; trial < 500; ++trial)
    {
        const Index n = 2 + trial % 7;
        const CMatrix m = random_pd(n, rng, 0.0);
        CVector v = random_constant_modulus(n, 0.25, rng);
        for (Index l = 0; l < n; ++l)
        {
            const double before = quadratic_form(v, m);
            const cd old = v(l);
            v(l) = phase_element_update(v, m, l);
            EXPECT_LE(quadratic_form(v, m), before + 1e-12);
            EXPECT_NEAR(std::abs(v(l)), std::abs(old), 1e-15);
        }
    }
}

TEST(PhaseUpdate, MatchesGridOracleForSmallSubarrays)
{
    Rng rng(6);
    const int points = 4096;
    for (int trial = 0; trial < 1000; ++trial)
    {
        const Index n = 2 + trial % 3; // N_RF in {2, 3, 4}
        const CMatrix m = random_pd(n, rng, 0.0);
        CVector v = random_constant_modulus(n, 1.0 / std::sqrt(8.0), rng);
        const Index l = static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(n));

        cd c(0, 0);
        for (Index i = 0; i < n; ++i)
            if (i != l)
                c += std::conj(m(i, l)) * v(i);
        // Objective is a - 2 |c| |v_l| cos(.) around the optimum; half a grid
        // step bounds how far the grid can sit above the true minimum.
        const double step = 2.0 * kPi / points;
        const double slack = 2.0 * std::abs(c) * std::abs(v(l)) * (1.0 - std::cos(step / 2.0)) + 1e-12;

        const double grid = grid_minimum(v, m, l, points);
        v(l) = phase_element_update(v, m, l);
        const double closed = quadratic_form(v, m);
        EXPECT_LE(closed, grid + 1e-12);
        EXPECT_GE(closed, grid - slack);
    }
}

TEST(OptimizeSubarray, SingleSubarrayReturnsInitial)
{
    const SystemDims dims(1, 4);
    const auto h = random_channel(dims, 7);
    Rng rng(8);
    const AnalogBeamformer f = AnalogBeamformer::random(dims, Side::transmit, rng);
    const CVector init = random_constant_modulus(4, 0.5, rng);
    const auto res = optimize_subarray(Side::receive, 0, h, f, init);
    EXPECT_TRUE(res.steering == init);
    ASSERT_EQ(res.trace.values.size(), 1u);
    EXPECT_EQ(res.trace.values[0], 0.0);
    EXPECT_EQ(res.trace.iterations, 1);
}

TEST(OptimizeSubarray, ConvergesAndBeatsRandomSearch)
{
    const SystemDims dims(8, 8);
    Rng rng(2026);
    const ChannelMatrix h = generate_channel(dims, ClusterConfig{}, rng);
    const auto f = AnalogBeamformer::random(dims, Side::transmit, rng);
    const auto g = AnalogBeamformer::random(dims, Side::receive, rng);
    for (Side side : {Side::receive, Side::transmit})
    {
        const AnalogBeamformer &other = side == Side::receive ? f : g;
        const AnalogBeamformer &own = side == Side::receive ? g : f;
        for (int k = 0; k < 8; ++k)
        {
            const auto res = optimize_subarray(side, k, h, other, own.steering(k), 1e-4);
            EXPECT_TRUE(res.trace.non_increasing());
            EXPECT_TRUE(res.trace.converged);
            for (Index l = 0; l < 8; ++l)
                EXPECT_NEAR(std::abs(res.steering(l)), 0.125, 1e-12);

            if (k == 0)
            {
                const CMatrix m = leakage_matrix(side, k, h, other);
                const double final_value = quadratic_form(res.steering, m);
                for (int t = 0; t < 1000; ++t)
                    EXPECT_LE(final_value, quadratic_form(random_constant_modulus(8, 0.125, rng), m) + 1e-12);
            }
        }
    }
}

TEST(AlternateAnalog, SingleSubarrayReturnsImmediately)
{
    const SystemDims dims(1, 4);
    const auto h = random_channel(dims, 9);
    Rng rng(9);
    const auto res = alternate_analog(h, rng);
    ASSERT_EQ(res.total_trace.values.size(), 1u);
    EXPECT_EQ(res.total_trace.values[0], 0.0);
    EXPECT_TRUE(res.subarray_logs.empty());
}

TEST(AlternateAnalog, MonotoneWithMatchingLeakageTotals)
{
    const SystemDims dims(4, 4);
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        Rng rng(seed);
        const ChannelMatrix h = generate_channel(dims, ClusterConfig{}, rng);
        const auto f0 = AnalogBeamformer::random(dims, Side::transmit, rng);
        const auto g0 = AnalogBeamformer::random(dims, Side::receive, rng);
        const auto res = alternate_analog(h, f0, g0);
        EXPECT_TRUE(res.total_trace.non_increasing());
        for (const auto &log : res.subarray_logs)
            EXPECT_TRUE(log.trace.non_increasing());
        EXPECT_GE(res.total_trace.values.back(), 0.0);

        // Re-run with growing outer caps: every intermediate total matches the
        // trace and the forward/backward identity holds there.
        for (int cap = 1; cap <= res.total_trace.iterations; ++cap)
        {
            const auto partial = alternate_analog(h, f0, g0, 1e-4, cap);
            const LeakageReport rep = total_interference(h, partial.precoder, partial.combiner);
            EXPECT_LE(test::rel_diff(rep.forward_sum, rep.backward_sum), 1e-9);
            EXPECT_NEAR(rep.total, res.total_trace.values[cap - 1], 1e-12 * std::max(1.0, rep.total));
        }
    }
}

TEST(AlternateAnalog, RejectsBadArguments)
{
    const SystemDims dims(2, 2);
    const auto h = random_channel(dims, 1);
    Rng rng(1);
    EXPECT_THROW(alternate_analog(h, rng, 0.0), std::invalid_argument);
    EXPECT_THROW(alternate_analog(h, rng, 1e-4, 0), std::invalid_argument);
    const AnalogBeamformer f(dims, Side::transmit), g(dims, Side::receive);
    EXPECT_THROW(alternate_analog(h, g, f), std::invalid_argument);
}

TEST(TotalInterference, ZeroChannel)
{
    const SystemDims dims(3, 3);
    const ChannelMatrix h(CMatrix::Zero(9, 9), dims);
    Rng rng(2);
    const auto rep = total_interference(h, AnalogBeamformer::random(dims, Side::transmit, rng),
                                        AnalogBeamformer::random(dims, Side::receive, rng));
    EXPECT_EQ(rep.total, 0.0);
    for (double x : rep.forward_per_subarray)
        EXPECT_EQ(x, 0.0);
}

TEST(TotalInterference, MatchesNaiveLoopAndIdentity)
{
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial)
    {
        const SystemDims dims(2 + trial % 4, 1 + trial % 5);
        const Index b = dims.antennas_per_subarray();
        const int nr = dims.n_subarrays();
        const ChannelMatrix h(random_matrix(dims.total_antennas(), dims.total_antennas(), rng), dims);
        const auto f = AnalogBeamformer::random(dims, Side::transmit, rng);
        const auto g = AnalogBeamformer::random(dims, Side::receive, rng);
        const CMatrix fm = f.matrix(), gm = g.matrix();
        double naive = 0.0;
        for (int k = 0; k < nr; ++k)
            for (int j = 0; j < nr; ++j)
            {
                if (j == k)
                    continue;
                cd acc(0, 0);
                for (Index r = 0; r < b; ++r)
                    for (Index c = 0; c < b; ++c)
                        acc += std::conj(gm(k * b + r, k)) * h.entries()(k * b + r, j * b + c) * fm(j * b + c, j);
                naive += std::norm(acc);
            }
        const auto rep = total_interference(h, f, g);
        EXPECT_LE(test::rel_diff(rep.total, naive), 1e-12);
        EXPECT_LE(test::rel_diff(rep.forward_sum, rep.backward_sum), 1e-9);
    }
}

TEST(TotalInterference, RejectsDimensionMismatch)
{
    const auto h = random_channel(SystemDims(2, 2), 1);
    const AnalogBeamformer f(SystemDims(2, 3), Side::transmit), g(SystemDims(2, 2), Side::receive);
    EXPECT_THROW(total_interference(h, f, g), std::invalid_argument);
}
