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

#include "hbf/types.hpp"

namespace hbf
{

// Circuit power constants in watts: 20 mW PA/LNA, 200 mW DAC/ADC, 30 mW phase
// shifter, 43 mW RF chain and 300 mW baseband by default, with an ideal amplifier.
struct PowerModel
{
    double p_pa = 0.020;
    double p_lna = 0.020;
    double p_dac = 0.200;
    double p_adc = 0.200;
    double p_ps = 0.030;
    double p_trfc = 0.043;
    double p_rrfc = 0.043;
    double p_bb = 0.300;
    double eta = 1.0;

    void validate() const;

    friend bool operator==(const PowerModel &, const PowerModel &) = default;
};

// Affine consumed-power model P = eta * power_scale * ||F_B||_F^2 + circuit.
struct ConsumptionModel
{
    double eta = 1.0;
    double power_scale = 1.0; // N_RF/N_t for hybrid, 1 for fully digital
    double circuit = 0.0;     // watts

    double consumed(double precoder_fro_sq) const { return eta * power_scale * precoder_fro_sq + circuit; }
};

// Hybrid transmitter/receiver circuit power P_T and P_R.
double hybrid_transmit_circuit(const SystemDims &dims, const PowerModel &pm);
double hybrid_receive_circuit(const SystemDims &dims, const PowerModel &pm);

// Fully-digital transmitter/receiver circuit power P_DT and P_DR.
double digital_transmit_circuit(const SystemDims &dims, const PowerModel &pm);
double digital_receive_circuit(const SystemDims &dims, const PowerModel &pm);

ConsumptionModel hybrid_consumption(const SystemDims &dims, const PowerModel &pm);
ConsumptionModel digital_consumption(const SystemDims &dims, const PowerModel &pm);

// eta (N_RF/N_t) ||F_B||_F^2 + P_T + P_R
double hybrid_power(const CMatrix &precoder, const SystemDims &dims, const PowerModel &pm);

// eta ||F_B||_F^2 + P_DT + P_DR
double digital_power(const CMatrix &precoder, const SystemDims &dims, const PowerModel &pm);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// log2 det(I + N^{-1} H F F^H H^H): rate with optimal processing of the full
// received vector, noise covariance N.
double spectral_efficiency(const CMatrix &channel, const CMatrix &precoder, const CMatrix &noise_cov);

// log2 det(I + (G^H N G)^{-1} G^H H F F^H H^H G): rate after a linear combiner G.
double spectral_efficiency(const CMatrix &channel, const CMatrix &precoder, const CMatrix &combiner,
                           const CMatrix &noise_cov);

struct Metrics
{
    double rate_bits = 0.0;          // bits/s/Hz
    double consumed_power = 0.0;     // watts
    double energy_efficiency = 0.0;  // bits/Hz/J
    double transmit_power = 0.0;     // watts
    double noise_power = 0.0;        // watts

    double rate_nats() const;
    double energy_efficiency_nats() const;
};

// Fills energy_efficiency = rate_bits / consumed_power.
Metrics make_metrics(double rate_bits, double consumed_power, double transmit_power, double noise_power);

} // namespace hbf
