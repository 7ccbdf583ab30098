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

#include "hbf/digital_stage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "hbf/linalg.hpp"

namespace hbf
{

namespace
{

void check_square(const CMatrix &m, Index n, const char *what)
{
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument(std::string(what) + ": expected a " + std::to_string(n) + "x" +
                                    std::to_string(n) + " matrix");
}

void check_precoder(const EffectiveChannel &eff, const CMatrix &precoder, const char *what)
{
    if (precoder.rows() != eff.entries.cols())
        throw std::invalid_argument(std::string(what) + ": precoder rows must match the channel columns");
}

} // namespace

bool DinkelbachState::lambda_non_decreasing(double slack) const
{
    for (std::size_t i = 1; i < outer_trace.size(); ++i)
        if (outer_trace[i - 1].first > 0.0 && outer_trace[i].first < outer_trace[i - 1].first - slack)
            return false;
    return true;
}

EffectiveChannel effective_channel(const ChannelMatrix &h, const AnalogBeamformer &precoder,
                                   const AnalogBeamformer &combiner, double noise_power)
{
    if (!(precoder.dims() == h.dims()) || !(combiner.dims() == h.dims()))
        throw std::invalid_argument("effective_channel: beamformer dimensions do not match the channel");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("effective_channel: noise power must be positive");
    const CMatrix fr = precoder.matrix();
    const CMatrix gr = combiner.matrix();
    EffectiveChannel eff;
    eff.entries = gr.adjoint() * h.entries() * fr;
    eff.noise_cov = linalg::hermitian_part(noise_power * (gr.adjoint() * gr));
    eff.power_scale = h.dims().power_scale();
    eff.noise_power = noise_power;
    return eff;
}

EffectiveChannel fully_digital_channel(const ChannelMatrix &h, double noise_power)
{
    if (!(noise_power > 0.0))
        throw std::invalid_argument("fully_digital_channel: noise power must be positive");
    const Index n = h.entries().rows();
    return {h.entries(), noise_power * CMatrix::Identity(n, n), 1.0, noise_power};
}

CMatrix whitening(const CMatrix &noise_cov)
{
    check_square(noise_cov, noise_cov.rows(), "whitening");
    return linalg::hermitian_inverse_sqrt(noise_cov, 1e-12);
}

CMatrix mmse_combiner(const EffectiveChannel &eff, const CMatrix &precoder)
{
    check_precoder(eff, precoder, "mmse_combiner");
    const CMatrix hf = eff.entries * precoder;
    const CMatrix system = hf * hf.adjoint() + eff.noise_cov;
    return linalg::hermitian_solve(system, hf);
}

CMatrix mse_matrix(const EffectiveChannel &eff, const CMatrix &precoder, const CMatrix &combiner)
{
    check_precoder(eff, precoder, "mse_matrix");
    if (combiner.rows() != eff.entries.rows() || combiner.cols() != precoder.cols())
        throw std::invalid_argument("mse_matrix: combiner dimensions do not match");
    const CMatrix ghf = combiner.adjoint() * (eff.entries * precoder);
    const CMatrix e = ghf * ghf.adjoint() + combiner.adjoint() * eff.noise_cov * combiner - ghf - ghf.adjoint() +
                      CMatrix::Identity(ghf.rows(), ghf.cols());
    return linalg::hermitian_part(e);
}

CMatrix mse_matrix_whitened(const EffectiveChannel &eff, const CMatrix &precoder, const CMatrix &whitened_combiner,
                            const CMatrix &whitener)
{
    check_precoder(eff, precoder, "mse_matrix_whitened");
    const CMatrix &gb = whitened_combiner;
    const CMatrix whf = whitener * eff.entries * precoder;
    const CMatrix e = gb.adjoint() * whf * whf.adjoint() * gb +
                      gb.adjoint() * whitener * eff.noise_cov * whitener.adjoint() * gb - gb.adjoint() * whf -
                      whf.adjoint() * gb + CMatrix::Identity(gb.cols(), gb.cols());
    return linalg::hermitian_part(e);
}

CMatrix mmse_error_closed_form(const EffectiveChannel &eff, const CMatrix &precoder)
{
    check_precoder(eff, precoder, "mmse_error_closed_form");
    const CMatrix hf = eff.entries * precoder;
    const CMatrix k = hf.adjoint() * linalg::hermitian_solve(eff.noise_cov, hf);
    return linalg::hermitian_inverse(CMatrix::Identity(k.rows(), k.cols()) + k);
}

WeightUpdate weight_update(const CMatrix &mse, double eig_floor)
{
    check_square(mse, mse.rows(), "weight_update");
    if (!mse.allFinite())
        throw SingularMatrixError("weight_update: MSE matrix has non-finite entries");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitian_part(mse));
    if (es.info() != Eigen::Success)
        throw SingularMatrixError("weight_update: eigendecomposition failed");
    RVector ev = es.eigenvalues();
    const double top = ev.size() > 0 ? ev.maxCoeff() : 1.0;
    if (!(top > 0.0) || ev.minCoeff() < -1e-8 * std::max(1.0, top))
        throw SingularMatrixError("weight_update: MSE matrix is singular or indefinite");

    WeightUpdate out;
    for (Index i = 0; i < ev.size(); ++i)
    {
        if (ev(i) < eig_floor)
        {
            ev(i) = eig_floor;
            out.floored = true;
        }
    }
    const CMatrix &v = es.eigenvectors();
    out.weight = linalg::hermitian_part(v * ev.cwiseInverse().asDiagonal() * v.adjoint());
    out.log_det = -ev.array().log().sum();
    return out;
}

CMatrix precoder_update(const EffectiveChannel &eff, const CMatrix &combiner, const CMatrix &weight, double mu_tilde)
{
    if (!(mu_tilde >= 0.0))
        throw std::invalid_argument("precoder_update: mu_tilde must be >= 0");
    const CMatrix rhs = eff.entries.adjoint() * combiner * weight; // H~^H G W
    const CMatrix a = rhs * combiner.adjoint() * eff.entries;      // H~^H G W G^H H~
    const Index n = a.rows();
    return linalg::hermitian_solve(a + mu_tilde * CMatrix::Identity(n, n), rhs);
}

PrecoderSpectrum::PrecoderSpectrum(const EffectiveChannel &eff, const CMatrix &combiner, const CMatrix &weight)
    : power_scale_(eff.power_scale)
{
    const CMatrix rhs = eff.entries.adjoint() * combiner * weight;
    const CMatrix a = linalg::hermitian_part(rhs * combiner.adjoint() * eff.entries);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
    if (es.info() != Eigen::Success)
        throw NumericFailure("PrecoderSpectrum: eigendecomposition failed");
    omega_ = es.eigenvectors();
    lambda_ = es.eigenvalues();
    projected_rhs_ = omega_.adjoint() * rhs;
    phi_ = projected_rhs_.rowwise().squaredNorm();
    phi_total_ = phi_.sum();
}

bool PrecoderSpectrum::negligible(Index m) const
{
    return phi_total_ == 0.0 || phi_(m) <= 1e-14 * phi_total_;
}

double PrecoderSpectrum::power(double mu_tilde) const
{
    double acc = 0.0;
    for (Index m = 0; m < lambda_.size(); ++m)
    {
        if (negligible(m))
            continue;
        const double d = lambda_(m) + mu_tilde;
        if (!(d > 0.0))
            return std::numeric_limits<double>::infinity();
        acc += phi_(m) / (d * d);
    }
    return power_scale_ * acc;
}

CMatrix PrecoderSpectrum::precoder(double mu_tilde) const
{
    RVector scale(lambda_.size());
    for (Index m = 0; m < lambda_.size(); ++m)
    {
        const double d = lambda_(m) + mu_tilde;
        scale(m) = (negligible(m) || !(d > 0.0)) ? 0.0 : 1.0 / d;
    }
    return omega_ * (scale.asDiagonal() * projected_rhs_);
}

double PrecoderSpectrum::upper_bracket(double budget) const
{
    return std::sqrt(power_scale_ / budget * phi_total_);
}

BisectionResult solve_power_multiplier(const PrecoderSpectrum &spectrum, double budget, double floor, double tol,
                                       int max_iterations)
{
    if (!(budget > 0.0))
        throw std::invalid_argument("solve_power_multiplier: power budget must be positive");
    if (!(floor >= 0.0))
        throw std::invalid_argument("solve_power_multiplier: floor must be >= 0");

    BisectionResult res;
    const double at_floor = spectrum.power(floor);
    if (at_floor <= budget)
    {
        res.mu_tilde = floor;
        res.constraint_residual = at_floor - budget;
        return res;
    }

    res.active = true;
    double lo = floor;
    double hi = std::max(spectrum.upper_bracket(budget), floor);
    for (int it = 1; it <= max_iterations; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        const double p = spectrum.power(mid);
        res.iterations = it;
        if (std::abs(p - budget) <= tol * budget)
        {
            res.mu_tilde = mid;
            res.constraint_residual = p - budget;
            return res;
        }
        if (mid <= lo || mid >= hi)
            break;
        if (p > budget)
            lo = mid;
        else
            hi = mid;
    }
    // Bracket exhausted: keep the feasible end.
    res.converged = false;
    res.mu_tilde = hi;
    res.constraint_residual = spectrum.power(hi) - budget;
    return res;
}

BisectionResult solve_power_multiplier(const EffectiveChannel &eff, const CMatrix &combiner, const CMatrix &weight,
                                       double budget, double floor, double tol, int max_iterations)
{
    return solve_power_multiplier(PrecoderSpectrum(eff, combiner, weight), budget, floor, tol, max_iterations);
}

CMatrix initial_precoder(const EffectiveChannel &eff, double budget)
{
    if (!(budget > 0.0))
        throw std::invalid_argument("initial_precoder: power budget must be positive");
    const Index n = eff.streams();
    const double amp = std::sqrt(budget / (eff.power_scale * static_cast<double>(n)));
    return amp * CMatrix::Identity(n, n);
}

double wmmse_utility(const CMatrix &weight, const CMatrix &mse)
{
    return wmmse_utility(weight, linalg::hermitian_log_det(weight), mse);
}

double wmmse_utility(const CMatrix &weight, double weight_log_det, const CMatrix &mse)
{
    // tr(W E) without forming the product.
    const double twe = (weight.transpose().cwiseProduct(mse)).sum().real();
    return -twe + weight_log_det + static_cast<double>(weight.rows());
}

InnerResult inner_wmmse(const EffectiveChannel &eff, double budget, double lambda_ee,
                        const ConsumptionModel &consumption, const SolverOptions &opts,
                        const std::optional<CMatrix> &start)
{
    if (!(opts.eps > 0.0))
        throw std::invalid_argument("inner_wmmse: eps must be positive");
    if (!(lambda_ee >= 0.0))
        throw std::invalid_argument("inner_wmmse: lambda_ee must be >= 0");
    if (eff.entries.rows() != eff.entries.cols())
        throw std::invalid_argument("inner_wmmse: effective channel must be square");

    const Index n = eff.streams();
    const double floor = lambda_ee * consumption.eta * eff.power_scale;

    InnerResult out;
    out.set.whitener = whitening(eff.noise_cov);
    CMatrix precoder = start ? *start : initial_precoder(eff, budget);
    if (precoder.rows() != n || precoder.cols() != n)
        throw std::invalid_argument("inner_wmmse: starting precoder has the wrong size");
    CMatrix weight = CMatrix::Identity(n, n);
    CMatrix combiner;
    CMatrix mse;
    double weight_log_det = 0.0;
    bool floored = false;
    int failed_bisections = 0;
    double previous = -std::numeric_limits<double>::infinity();

    for (int it = 1; it <= opts.max_inner; ++it)
    {
        combiner = mmse_combiner(eff, precoder);
        const WeightUpdate wu = weight_update(mse_matrix(eff, precoder, combiner), opts.eig_floor);
        weight = wu.weight;
        weight_log_det = wu.log_det;
        floored = floored || wu.floored;

        const PrecoderSpectrum spectrum(eff, combiner, weight);
        out.last_bisection = solve_power_multiplier(spectrum, budget, floor, opts.bisection_tol, opts.max_bisection);
        failed_bisections += out.last_bisection.converged ? 0 : 1;
        precoder = spectrum.precoder(out.last_bisection.mu_tilde);

        mse = mse_matrix(eff, precoder, combiner);
        out.utility = wmmse_utility(weight, weight_log_det, mse);
        out.consumed_power = consumption.consumed(precoder.squaredNorm());
        out.chi = out.utility - lambda_ee * out.consumed_power;
        if (!std::isfinite(out.chi))
            throw NumericFailure("inner_wmmse: objective became non-finite");
        out.trace.push_back(out.chi);
        out.iterations = it;
        if (std::abs(out.chi - previous) <= opts.eps)
        {
            out.converged = true;
            break;
        }
        previous = out.chi;
    }

    if (!out.converged)
        out.diagnostics.push_back("inner loop reached the iteration cap (" + std::to_string(opts.max_inner) + ")");
    if (floored)
        out.diagnostics.push_back("MSE eigenvalue floored before inversion");
    if (failed_bisections > 0)
        out.diagnostics.push_back("power bisection did not reach tolerance in " + std::to_string(failed_bisections) +
                                  " iteration(s)");

    out.set.precoder = std::move(precoder);
    out.set.combiner = std::move(combiner);
    out.set.weight = std::move(weight);
    out.set.mse = std::move(mse);
    return out;
}

DigitalSolution dinkelbach_solve(const EffectiveChannel &eff, double budget, const ConsumptionModel &consumption,
                                 const SolverOptions &opts)
{
    if (!(opts.eps > 0.0))
        throw std::invalid_argument("dinkelbach_solve: eps must be positive");
    if (opts.max_outer < 1)
        throw std::invalid_argument("dinkelbach_solve: max_outer must be >= 1");

    DigitalSolution sol;
    double lambda = 0.0;
    InnerResult inner;
    const int rounds = opts.energy_efficiency ? opts.max_outer : 1;
    for (int outer = 1; outer <= rounds; ++outer)
    {
        inner = outer == 1 ? inner_wmmse(eff, budget, lambda, consumption, opts)
                           : inner_wmmse(eff, budget, lambda, consumption, opts, inner.set.precoder);
        sol.inner_traces.push_back(inner.trace);
        sol.inner_iterations.push_back(inner.iterations);
        sol.active_bisections += inner.last_bisection.active ? 1 : 0;
        for (auto &d : inner.diagnostics)
            sol.diagnostics.push_back("outer " + std::to_string(outer) + ": " + d);

        sol.state.lambda_ee = lambda;
        sol.state.inner_objective = inner.chi;
        if (!opts.energy_efficiency)
        {
            sol.state.converged = inner.converged;
            break;
        }
        sol.state.outer_trace.emplace_back(lambda, inner.chi);
        if (std::abs(inner.chi) <= opts.eps)
        {
            sol.state.converged = true;
            break;
        }
        lambda = inner.utility / inner.consumed_power;
    }
    if (opts.energy_efficiency && !sol.state.converged)
        sol.diagnostics.push_back("Dinkelbach loop reached the iteration cap (" + std::to_string(opts.max_outer) + ")");

    sol.set = std::move(inner.set);
    const double fro_sq = sol.set.precoder.squaredNorm();
    const double rate_bits = spectral_efficiency(eff.entries, sol.set.precoder, eff.noise_cov);
    sol.metrics = make_metrics(rate_bits, consumption.consumed(fro_sq), eff.power_scale * fro_sq, eff.noise_power);
    sol.rate_nats = sol.metrics.rate_nats();
    sol.energy_efficiency_nats = sol.metrics.energy_efficiency_nats();
    return sol;
}

DigitalSolution fully_digital_solve(const ChannelMatrix &h, double noise_power, double budget, const PowerModel &pm,
                                    const SolverOptions &opts)
{
    return dinkelbach_solve(fully_digital_channel(h, noise_power), budget, digital_consumption(h.dims(), pm), opts);
}

DigitalSolution hybrid_digital_solve(const ChannelMatrix &h, const AnalogBeamformer &precoder,
                                     const AnalogBeamformer &combiner, double noise_power, double budget,
                                     const PowerModel &pm, const SolverOptions &opts)
{
    return dinkelbach_solve(effective_channel(h, precoder, combiner, noise_power), budget,
                            hybrid_consumption(h.dims(), pm), opts);
}

} // namespace hbf
