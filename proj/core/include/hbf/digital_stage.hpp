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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hbf/analog_stage.hpp"
#include "hbf/channel_model.hpp"
#include "hbf/metrics.hpp"
#include "hbf/types.hpp"

namespace hbf
{

// Baseband view of the link once the analog stage is fixed:
// y~ = H~ F_B s + n~, with n~ ~ CN(0, noise_cov).
struct EffectiveChannel
{
    CMatrix entries;          // H~ = G_R^H H F_R (or H itself for fully digital)
    CMatrix noise_cov;        // R_n~ = sigma_n^2 G_R^H G_R
    double power_scale = 1.0; // N~ = N_RF/N_t, radiated power per unit ||F_B||_F^2
    double noise_power = 0.0; // sigma_n^2

    Index streams() const { return entries.cols(); }
};

struct DigitalBeamformerSet
{
    CMatrix precoder; // F_B
    CMatrix combiner; // G_B
    CMatrix weight;   // W
    CMatrix whitener; // R_n~^{-1/2}
    CMatrix mse;      // E at (F_B, G_B)
};

struct DinkelbachState
{
    double lambda_ee = 0.0;       // rate/power ratio parameter, nats/Hz per watt
    double inner_objective = 0.0; // last inner objective
    std::vector<std::pair<double, double>> outer_trace; // (lambda_ee, inner objective)
    bool converged = false;

    // lambda_ee never decreases once positive.
    bool lambda_non_decreasing(double slack = 1e-12) const;
};

struct BisectionResult
{
    double mu_tilde = 0.0;
    double constraint_residual = 0.0; // N~ ||F_B(mu)||_F^2 - P
    bool active = false;              // power constraint tight
    bool converged = true;
    int iterations = 0;
};

struct SolverOptions
{
    double eps = 1e-4;
    int max_inner = 500;
    int max_outer = 50;
    double bisection_tol = 1e-12; // relative, on the power residual
    int max_bisection = 200;
    double eig_floor = 1e-12;    // floor on MSE eigenvalues before inversion
    bool energy_efficiency = true; // false: spectral efficiency only (lambda pinned to 0)
};

// ---------------------------------------------------------------------------
// Building blocks

EffectiveChannel effective_channel(const ChannelMatrix &h, const AnalogBeamformer &precoder,
                                   const AnalogBeamformer &combiner, double noise_power);

// The full channel as its own "effective" channel: noise sigma^2 I, scale 1.
EffectiveChannel fully_digital_channel(const ChannelMatrix &h, double noise_power);

// R^{-1/2}; the sandwich W R W^H is the identity.
CMatrix whitening(const CMatrix &noise_cov);

// (H~ F F^H H~^H + R)^{-1} H~ F
CMatrix mmse_combiner(const EffectiveChannel &eff, const CMatrix &precoder);

// E = G^H (H~ F F^H H~^H + R) G - G^H H~ F - F^H H~^H G + I, Hermitian part.
CMatrix mse_matrix(const EffectiveChannel &eff, const CMatrix &precoder, const CMatrix &combiner);

// Same expression written with the whitened combiner G_bar = W~^{-H} G.
CMatrix mse_matrix_whitened(const EffectiveChannel &eff, const CMatrix &precoder,
                            const CMatrix &whitened_combiner, const CMatrix &whitener);

// (I + F^H H~^H R^{-1} H~ F)^{-1}: MSE under the MMSE combiner.
CMatrix mmse_error_closed_form(const EffectiveChannel &eff, const CMatrix &precoder);

struct WeightUpdate
{
    CMatrix weight;
    double log_det = 0.0; // ln det W
    bool floored = false; // an eigenvalue of E was raised to the floor
};

// W = E^{-1}. Eigenvalues of E below `eig_floor` are raised to it and
// flagged; a materially indefinite or non-finite E is a SingularMatrixError.
WeightUpdate weight_update(const CMatrix &mse, double eig_floor = 1e-12);

// (H~^H G W G^H H~ + mu I)^{-1} H~^H G W
CMatrix precoder_update(const EffectiveChannel &eff, const CMatrix &combiner, const CMatrix &weight,
                        double mu_tilde);

// Spectral form of the regularized precoder: A = H~^H G W G^H H~ = Omega Lambda
// Omega^H and B = H~^H G W. The radiated power at mu is
// N~ sum_m Phi(m,m) / (Lambda(m) + mu)^2 with Phi = Omega^H B B^H Omega.
class PrecoderSpectrum
{
public:
    PrecoderSpectrum(const EffectiveChannel &eff, const CMatrix &combiner, const CMatrix &weight);

    const RVector &lambda() const { return lambda_; }
    const RVector &phi() const { return phi_; }
    double power_scale() const { return power_scale_; }

    // N~ ||F_B(mu)||_F^2; +inf when a direction with energy has Lambda + mu == 0.
    double power(double mu_tilde) const;

    // F_B(mu); directions without energy are dropped (pseudo-inverse).
    CMatrix precoder(double mu_tilde) const;

    // sqrt(N~ / P * sum Phi(m,m)), where the power is at most P.
    double upper_bracket(double budget) const;

private:
    bool negligible(Index m) const;

    CMatrix omega_;
    RVector lambda_;
    RVector phi_;
    CMatrix projected_rhs_; // Omega^H B
    double power_scale_;
    double phi_total_;
};

// Smallest mu >= floor for which N~ ||F_B(mu)||_F^2 <= P, found by bisection
// on [floor, upper_bracket] when the floor itself is infeasible.
BisectionResult solve_power_multiplier(const PrecoderSpectrum &spectrum, double budget, double floor,
                                       double tol = 1e-8, int max_iterations = 200);

BisectionResult solve_power_multiplier(const EffectiveChannel &eff, const CMatrix &combiner,
                                       const CMatrix &weight, double budget, double floor,
                                       double tol = 1e-8, int max_iterations = 200);

// Scaled identity with N~ tr(F F^H) = P.
CMatrix initial_precoder(const EffectiveChannel &eff, double budget);

// -tr(W E) + ln det W + N_r (natural log).
double wmmse_utility(const CMatrix &weight, const CMatrix &mse);
double wmmse_utility(const CMatrix &weight, double weight_log_det, const CMatrix &mse);

// ---------------------------------------------------------------------------
// Solvers

struct InnerResult
{
    DigitalBeamformerSet set;
    double chi = 0.0;       // utility - lambda * consumed power
    double utility = 0.0;   // -tr(W E) + ln det W + N_r
    double consumed_power = 0.0;
    std::vector<double> trace; // chi after every iteration
    int iterations = 0;
    bool converged = false;
    BisectionResult last_bisection;
    std::vector<std::string> diagnostics;
};

// Block-coordinate ascent over combiner, weight and precoder for a fixed
// lambda_ee. Starts from `start` when given (it must satisfy the power
// budget), otherwise from the scaled-identity precoder and W = I.
InnerResult inner_wmmse(const EffectiveChannel &eff, double budget, double lambda_ee,
                        const ConsumptionModel &consumption, const SolverOptions &opts = {},
                        const std::optional<CMatrix> &start = std::nullopt);

struct DigitalSolution
{
    DigitalBeamformerSet set;
    DinkelbachState state;
    std::vector<std::vector<double>> inner_traces; // one per outer iteration
    std::vector<int> inner_iterations;
    Metrics metrics;
    double rate_nats = 0.0;
    double energy_efficiency_nats = 0.0;
    int active_bisections = 0;
    std::vector<std::string> diagnostics;
};

// Dinkelbach iteration on the rate/power ratio. Every outer round after the
// first warm-starts the inner loop from the previous precoder, so the inner
// objective starts at exactly zero and lambda_ee can only grow. With
// opts.energy_efficiency == false a single inner solve with lambda = 0 is run
// (spectral-efficiency mode) and the outer trace stays empty.
DigitalSolution dinkelbach_solve(const EffectiveChannel &eff, double budget,
                                 const ConsumptionModel &consumption, const SolverOptions &opts = {});

// Unconstrained baseline: one RF chain per antenna, same machinery on H.
DigitalSolution fully_digital_solve(const ChannelMatrix &h, double noise_power, double budget,
                                    const PowerModel &pm, const SolverOptions &opts = {});

// Hybrid pipeline digital stage on top of a fixed analog stage.
DigitalSolution hybrid_digital_solve(const ChannelMatrix &h, const AnalogBeamformer &precoder,
                                     const AnalogBeamformer &combiner, double noise_power, double budget,
                                     const PowerModel &pm, const SolverOptions &opts = {});

} // namespace hbf
