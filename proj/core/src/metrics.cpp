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

#include "hbf/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "hbf/linalg.hpp"

namespace hbf
{

void PowerModel::validate() const
{
    for (double p : {p_pa, p_lna, p_dac, p_adc, p_ps, p_trfc, p_rrfc, p_bb})
        if (!std::isfinite(p) || p < 0.0)
            throw std::invalid_argument("PowerModel: component powers must be finite and >= 0");
    if (!std::isfinite(eta) || eta < 1.0)
        throw std::invalid_argument("PowerModel: eta must be >= 1");
}

double hybrid_transmit_circuit(const SystemDims &dims, const PowerModel &pm)
{
    return dims.n_subarrays() * (pm.p_trfc + pm.p_dac) + dims.total_antennas() * (pm.p_pa + pm.p_ps) + pm.p_bb;
}

double hybrid_receive_circuit(const SystemDims &dims, const PowerModel &pm)
{
    return dims.n_subarrays() * (pm.p_rrfc + pm.p_adc) + dims.total_antennas() * (pm.p_lna + pm.p_ps) + pm.p_bb;
}

double digital_transmit_circuit(const SystemDims &dims, const PowerModel &pm)
{
    return dims.total_antennas() * (pm.p_trfc + pm.p_dac + pm.p_pa) + pm.p_bb;
}

double digital_receive_circuit(const SystemDims &dims, const PowerModel &pm)
{
    return dims.total_antennas() * (pm.p_rrfc + pm.p_adc + pm.p_lna) + pm.p_bb;
}

ConsumptionModel hybrid_consumption(const SystemDims &dims, const PowerModel &pm)
{
    pm.validate();
    return {pm.eta, dims.power_scale(), hybrid_transmit_circuit(dims, pm) + hybrid_receive_circuit(dims, pm)};
}

ConsumptionModel digital_consumption(const SystemDims &dims, const PowerModel &pm)
{
    pm.validate();
    return {pm.eta, 1.0, digital_transmit_circuit(dims, pm) + digital_receive_circuit(dims, pm)};
}

double hybrid_power(const CMatrix &precoder, const SystemDims &dims, const PowerModel &pm)
{
    return hybrid_consumption(dims, pm).consumed(precoder.squaredNorm());
}

double digital_power(const CMatrix &precoder, const SystemDims &dims, const PowerModel &pm)
{
    return digital_consumption(dims, pm).consumed(precoder.squaredNorm());
}

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts)
{
    return 10.0 * std::log10(watts) + 30.0;
}

double spectral_efficiency(const CMatrix &channel, const CMatrix &precoder, const CMatrix &noise_cov)
{
    const CMatrix hf = channel * precoder;
    if (noise_cov.rows() != hf.rows() || noise_cov.cols() != hf.rows())
        throw std::invalid_argument("spectral_efficiency: noise covariance size mismatch");
    const CMatrix s = linalg::hermitian_solve(noise_cov, hf * hf.adjoint());
    const CMatrix m = CMatrix::Identity(s.rows(), s.cols()) + s;
    return linalg::log_abs_det(m) / std::log(2.0);
}

double spectral_efficiency(const CMatrix &channel, const CMatrix &precoder, const CMatrix &combiner,
                           const CMatrix &noise_cov)
{
    const CMatrix ghf = combiner.adjoint() * channel * precoder;
    const CMatrix rn = combiner.adjoint() * noise_cov * combiner;
    const CMatrix s = linalg::hermitian_solve(rn, ghf * ghf.adjoint());
    const CMatrix m = CMatrix::Identity(s.rows(), s.cols()) + s;
    return linalg::log_abs_det(m) / std::log(2.0);
}

double Metrics::rate_nats() const
{
    return rate_bits * std::log(2.0);
}

double Metrics::energy_efficiency_nats() const
{
    return energy_efficiency * std::log(2.0);
}

Metrics make_metrics(double rate_bits, double consumed_power, double transmit_power, double noise_power)
{
    if (!(consumed_power > 0.0))
        throw std::invalid_argument("make_metrics: consumed power must be positive");
    Metrics m;
    m.rate_bits = rate_bits;
    m.consumed_power = consumed_power;
    m.energy_efficiency = rate_bits / consumed_power;
    m.transmit_power = transmit_power;
    m.noise_power = noise_power;
    return m;
}

} // namespace hbf
