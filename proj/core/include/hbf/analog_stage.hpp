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

#include "hbf/channel_model.hpp"
#include "hbf/rng.hpp"
#include "hbf/types.hpp"

namespace hbf
{

enum class Side
{
    transmit,
    receive
};

const char *to_string(Side side);

// Bank of constant-modulus phase shifters, one steering vector per sub-array.
// Materializes to the block-diagonal N_t x N_r matrix F_R (transmit) or G_R
// (receive); every nonzero entry has modulus 1/sqrt(N_t).
class AnalogBeamformer
{
public:
    AnalogBeamformer(SystemDims dims, Side side);
    AnalogBeamformer(SystemDims dims, Side side, RMatrix phases);

    // Phases i.i.d. uniform on [0, 2 pi).
    static AnalogBeamformer random(SystemDims dims, Side side, Rng &rng);

    const SystemDims &dims() const { return dims_; }
    Side side() const { return side_; }

    // n_subarrays x antennas_per_subarray, radians.
    const RMatrix &phases() const { return phases_; }

    double element_modulus() const;

    // f_k or g_k (length N_RF).
    CVector steering(int k) const;

    // Stores only the phases of `v`; the modulus is restored to 1/sqrt(N_t).
    void set_steering(int k, const CVector &v);
    void set_phase(int k, int l, double phase);

    // Block-diagonal N_t x N_r matrix.
    CMatrix matrix() const;

private:
    SystemDims dims_;
    Side side_;
    RMatrix phases_;
};

// Per-sub-array leakage seen at the receiver (forward) and in the reciprocal
// network (backward), and their common total.
struct LeakageReport
{
    std::vector<double> forward_per_subarray;
    std::vector<double> backward_per_subarray;
    double total = 0.0;
    double forward_sum = 0.0;
    double backward_sum = 0.0;
};

// Objective values recorded once per sweep (or per outer iteration).
struct ConvergenceTrace
{
    double initial_value = 0.0;   // objective before the first sweep
    std::vector<double> values;   // objective after sweep 1, 2, ...
    double threshold = 0.0;
    int iterations = 0;
    bool converged = false;

    // True when every step (including initial -> first) is non-increasing
    // within `slack`.
    bool non_increasing(double slack = 1e-9) const;
};

// Receive side: sum_{j != k} H_{k,j} f_j f_j^H H_{k,j}^H, with other_side = F_R.
// Transmit side: sum_{j != k} H_{j,k}^H g_j g_j^H H_{j,k}, with other_side = G_R.
CMatrix leakage_matrix(Side side, int k, const ChannelMatrix &h, const AnalogBeamformer &other_side);

// Phase minimizing v^H M v over the phase of element l with the rest of v
// fixed: arg(sum_{i != l} conj(M(i,l)) v(i)) - pi, with arg(0) taken as 0.
double optimal_element_phase(const CVector &v, const CMatrix &m, Index l);

// Updated entry v(l) with modulus |v(l)| and the optimal phase.
cd phase_element_update(const CVector &v, const CMatrix &m, Index l);

// Quadratic form v^H M v (real part).
double quadratic_form(const CVector &v, const CMatrix &m);

struct SubarrayResult
{
    CVector steering;
    ConvergenceTrace trace;
};

inline constexpr double kDefaultEps = 1e-4;
inline constexpr int kDefaultMaxOuter = 100;
inline constexpr int kDefaultMaxSweeps = 100;

// Element-wise closed-form sweeps over one sub-array's steering vector until
// consecutive sweep objectives differ by at most eps. `side` names the
// beamformer being optimized; `other_side` is the fixed opposite end.
SubarrayResult optimize_subarray(Side side, int k, const ChannelMatrix &h,
                                 const AnalogBeamformer &other_side, const CVector &initial,
                                 double eps = kDefaultEps, int max_sweeps = kDefaultMaxSweeps);

struct SubarraySweepLog
{
    int outer_iteration = 0; // 1-based
    Side side = Side::receive;
    int subarray = 0;
    ConvergenceTrace trace;
};

struct AnalogResult
{
    AnalogBeamformer precoder; // F_R
    AnalogBeamformer combiner; // G_R
    ConvergenceTrace total_trace;
    std::vector<SubarraySweepLog> subarray_logs;
    // Sub-array optimizations that stopped on the sweep cap.
    int capped_subarrays = 0;
};

// Alternating receive/transmit phase-shifter optimization minimizing the total
// interference leakage. Both ends start from random phases drawn from `rng`
// (transmit first); the receive pass runs before the transmit pass.
AnalogResult alternate_analog(const ChannelMatrix &h, Rng &rng, double eps = kDefaultEps,
                              int max_outer = kDefaultMaxOuter, int max_sweeps = kDefaultMaxSweeps);

// Same, from given starting beamformers.
AnalogResult alternate_analog(const ChannelMatrix &h, AnalogBeamformer precoder,
                              AnalogBeamformer combiner, double eps = kDefaultEps,
                              int max_outer = kDefaultMaxOuter, int max_sweeps = kDefaultMaxSweeps);

LeakageReport total_interference(const ChannelMatrix &h, const AnalogBeamformer &precoder,
                                 const AnalogBeamformer &combiner);

} // namespace hbf
