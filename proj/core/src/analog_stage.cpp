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

#include "hbf/analog_stage.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hbf
{

const char *to_string(Side side)
{
    return side == Side::transmit ? "transmit" : "receive";
}

AnalogBeamformer::AnalogBeamformer(SystemDims dims, Side side)
    : dims_(dims), side_(side), phases_(RMatrix::Zero(dims.n_subarrays(), dims.antennas_per_subarray()))
{
}

AnalogBeamformer::AnalogBeamformer(SystemDims dims, Side side, RMatrix phases)
    : dims_(dims), side_(side), phases_(std::move(phases))
{
    if (phases_.rows() != dims_.n_subarrays() || phases_.cols() != dims_.antennas_per_subarray())
        throw std::invalid_argument("AnalogBeamformer: phase matrix must be n_subarrays x antennas_per_subarray");
    if (!phases_.allFinite())
        throw std::invalid_argument("AnalogBeamformer: phases must be finite");
}

AnalogBeamformer AnalogBeamformer::random(SystemDims dims, Side side, Rng &rng)
{
    RMatrix ph(dims.n_subarrays(), dims.antennas_per_subarray());
    for (Index k = 0; k < ph.rows(); ++k)
        for (Index l = 0; l < ph.cols(); ++l)
            ph(k, l) = rng.uniform(0.0, 2.0 * kPi);
    return AnalogBeamformer(dims, side, std::move(ph));
}

double AnalogBeamformer::element_modulus() const
{
    return 1.0 / std::sqrt(static_cast<double>(dims_.total_antennas()));
}

CVector AnalogBeamformer::steering(int k) const
{
    if (k < 0 || k >= dims_.n_subarrays())
        throw std::invalid_argument("AnalogBeamformer::steering: sub-array index out of range");
    const double mod = element_modulus();
    CVector v(dims_.antennas_per_subarray());
    for (Index l = 0; l < v.size(); ++l)
        v(l) = std::polar(mod, phases_(k, l));
    return v;
}

void AnalogBeamformer::set_steering(int k, const CVector &v)
{
    if (k < 0 || k >= dims_.n_subarrays())
        throw std::invalid_argument("AnalogBeamformer::set_steering: sub-array index out of range");
    if (v.size() != dims_.antennas_per_subarray())
        throw std::invalid_argument("AnalogBeamformer::set_steering: wrong vector length");
    for (Index l = 0; l < v.size(); ++l)
        phases_(k, l) = std::arg(v(l));
}

void AnalogBeamformer::set_phase(int k, int l, double phase)
{
    if (k < 0 || k >= dims_.n_subarrays() || l < 0 || l >= dims_.antennas_per_subarray())
        throw std::invalid_argument("AnalogBeamformer::set_phase: index out of range");
    phases_(k, l) = phase;
}

CMatrix AnalogBeamformer::matrix() const
{
    const int nr = dims_.n_subarrays();
    const int b = dims_.antennas_per_subarray();
    CMatrix m = CMatrix::Zero(dims_.total_antennas(), nr);
    for (int k = 0; k < nr; ++k)
        m.block(Index(k) * b, k, b, 1) = steering(k);
    return m;
}

bool ConvergenceTrace::non_increasing(double slack) const
{
    double prev = initial_value;
    for (double v : values)
    {
        if (v > prev + slack)
            return false;
        prev = v;
    }
    return true;
}

CMatrix leakage_matrix(Side side, int k, const ChannelMatrix &h, const AnalogBeamformer &other_side)
{
    const SystemDims &dims = h.dims();
    const int nr = dims.n_subarrays();
    if (k < 0 || k >= nr)
        throw std::invalid_argument("leakage_matrix: sub-array index " + std::to_string(k) + " out of range");
    if (!(other_side.dims() == dims))
        throw std::invalid_argument("leakage_matrix: beamformer dimensions do not match the channel");

    const int b = dims.antennas_per_subarray();
    CMatrix m = CMatrix::Zero(b, b);
    for (int j = 0; j < nr; ++j)
    {
        if (j == k)
            continue;
        CVector u;
        if (side == Side::receive)
            u = h.block(k, j) * other_side.steering(j); // H_{k,j} f_j
        else
            u = h.block(j, k).adjoint() * other_side.steering(j); // H_{j,k}^H g_j
        m.noalias() += u * u.adjoint();
    }
    return (m + m.adjoint()) * 0.5;
}

double optimal_element_phase(const CVector &v, const CMatrix &m, Index l)
{
    const Index n = v.size();
    if (l < 0 || l >= n)
        throw std::invalid_argument("optimal_element_phase: element index out of range");
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("optimal_element_phase: matrix size does not match the vector");

    // (M^{(-l)}(:, l))^H v^{(-l)}
    cd coupling{0.0, 0.0};
    for (Index i = 0; i < n; ++i)
        if (i != l)
            coupling += std::conj(m(i, l)) * v(i);
    const double phase = (coupling == cd{0.0, 0.0}) ? 0.0 : std::arg(coupling);
    return phase - kPi;
}

cd phase_element_update(const CVector &v, const CMatrix &m, Index l)
{
    const double phase = optimal_element_phase(v, m, l);
    return std::polar(std::abs(v(l)), phase);
}

double quadratic_form(const CVector &v, const CMatrix &m)
{
    return (v.adjoint() * m * v)(0, 0).real();
}

SubarrayResult optimize_subarray(Side side, int k, const ChannelMatrix &h, const AnalogBeamformer &other_side,
                                 const CVector &initial, double eps, int max_sweeps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("optimize_subarray: eps must be positive");
    if (max_sweeps < 1)
        throw std::invalid_argument("optimize_subarray: max_sweeps must be >= 1");
    const SystemDims &dims = h.dims();
    if (initial.size() != dims.antennas_per_subarray())
        throw std::invalid_argument("optimize_subarray: initial vector has the wrong length");

    const CMatrix m = leakage_matrix(side, k, h, other_side);

    SubarrayResult out{initial, {}};
    out.trace.threshold = eps;
    if (dims.n_subarrays() == 1)
    {
        // No interferers: nothing to minimize.
        out.trace.values = {0.0};
        out.trace.iterations = 1;
        out.trace.converged = true;
        return out;
    }

    const double modulus = 1.0 / std::sqrt(static_cast<double>(dims.total_antennas()));
    CVector &v = out.steering;
    out.trace.initial_value = quadratic_form(v, m);

    double previous = 0.0;
    for (int sweep = 1; sweep <= max_sweeps; ++sweep)
    {
        for (Index l = 0; l < v.size(); ++l)
            v(l) = std::polar(modulus, optimal_element_phase(v, m, l));
        const double objective = quadratic_form(v, m);
        out.trace.values.push_back(objective);
        out.trace.iterations = sweep;
        if (std::abs(objective - previous) <= eps)
        {
            out.trace.converged = true;
            break;
        }
        previous = objective;
    }
    return out;
}

LeakageReport total_interference(const ChannelMatrix &h, const AnalogBeamformer &precoder,
                                 const AnalogBeamformer &combiner)
{
    const SystemDims &dims = h.dims();
    if (!(precoder.dims() == dims) || !(combiner.dims() == dims))
        throw std::invalid_argument("total_interference: beamformer dimensions do not match the channel");

    const int nr = dims.n_subarrays();
    LeakageReport rep;
    rep.forward_per_subarray.resize(nr);
    rep.backward_per_subarray.resize(nr);
    for (int k = 0; k < nr; ++k)
    {
        rep.forward_per_subarray[k] =
            quadratic_form(combiner.steering(k), leakage_matrix(Side::receive, k, h, precoder));
        rep.backward_per_subarray[k] =
            quadratic_form(precoder.steering(k), leakage_matrix(Side::transmit, k, h, combiner));
        rep.forward_sum += rep.forward_per_subarray[k];
        rep.backward_sum += rep.backward_per_subarray[k];
    }
    rep.total = rep.forward_sum;
    return rep;
}

AnalogResult alternate_analog(const ChannelMatrix &h, AnalogBeamformer precoder, AnalogBeamformer combiner,
                              double eps, int max_outer, int max_sweeps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("alternate_analog: eps must be positive");
    if (max_outer < 1)
        throw std::invalid_argument("alternate_analog: max_outer must be >= 1");
    if (precoder.side() != Side::transmit || combiner.side() != Side::receive)
        throw std::invalid_argument("alternate_analog: expected a transmit precoder and a receive combiner");

    const SystemDims &dims = h.dims();
    AnalogResult res{std::move(precoder), std::move(combiner), {}, {}, 0};
    res.total_trace.threshold = eps;

    if (dims.n_subarrays() == 1)
    {
        res.total_trace.values = {0.0};
        res.total_trace.iterations = 1;
        res.total_trace.converged = true;
        return res;
    }

    const int nr = dims.n_subarrays();
    double previous = total_interference(h, res.precoder, res.combiner).total;
    res.total_trace.initial_value = previous;

    for (int outer = 1; outer <= max_outer; ++outer)
    {
        // Receive pass: every g_k depends only on the fixed F_R.
        for (int k = 0; k < nr; ++k)
        {
            auto sub = optimize_subarray(Side::receive, k, h, res.precoder, res.combiner.steering(k), eps, max_sweeps);
            res.combiner.set_steering(k, sub.steering);
            res.capped_subarrays += sub.trace.converged ? 0 : 1;
            res.subarray_logs.push_back({outer, Side::receive, k, std::move(sub.trace)});
        }
        // Transmit pass against the updated G_R.
        for (int k = 0; k < nr; ++k)
        {
            auto sub = optimize_subarray(Side::transmit, k, h, res.combiner, res.precoder.steering(k), eps, max_sweeps);
            res.precoder.set_steering(k, sub.steering);
            res.capped_subarrays += sub.trace.converged ? 0 : 1;
            res.subarray_logs.push_back({outer, Side::transmit, k, std::move(sub.trace)});
        }

        const double total = total_interference(h, res.precoder, res.combiner).total;
        res.total_trace.values.push_back(total);
        res.total_trace.iterations = outer;
        if (std::abs(total - previous) <= eps)
        {
            res.total_trace.converged = true;
            break;
        }
        previous = total;
    }
    return res;
}

AnalogResult alternate_analog(const ChannelMatrix &h, Rng &rng, double eps, int max_outer, int max_sweeps)
{
    AnalogBeamformer precoder = AnalogBeamformer::random(h.dims(), Side::transmit, rng);
    AnalogBeamformer combiner = AnalogBeamformer::random(h.dims(), Side::receive, rng);
    return alternate_analog(h, std::move(precoder), std::move(combiner), eps, max_outer, max_sweeps);
}

} // namespace hbf
