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

#include "hbf/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>

#include "hbf/linalg.hpp"
#include "hbf/rng.hpp"

namespace hbf::sim
{

namespace
{

// Tracks the worst observed value of one check against its bound.
struct Tally
{
    std::string name;
    double bound = 0.0;
    double worst = 0.0;
    int cases = 0;
    int violations = 0;
    std::string first_violation{};

    void observe(double value, const std::string &where)
    {
        ++cases;
        worst = std::max(worst, value);
        if (!(value <= bound))
        {
            if (violations++ == 0)
                first_violation = where;
        }
    }

    void flag(bool ok, const std::string &where) { observe(ok ? 0.0 : 1.0, where); }

    CheckResult result() const
    {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%d case(s), worst %.3g (bound %.3g)", cases, worst, bound);
        std::string detail = buf;
        if (violations > 0)
            detail += ", " + std::to_string(violations) + " violation(s), first at " + first_violation;
        return {name, violations == 0 && cases > 0, detail};
    }
};

double rel(double a, double b)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

std::string where(std::uint64_t seed, const char *what, double p_dbm = std::nan(""))
{
    std::string s = "seed " + std::to_string(seed) + " " + what;
    if (!std::isnan(p_dbm))
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, " @%gdBm", p_dbm);
        s += buf;
    }
    return s;
}

} // namespace

std::vector<CheckResult> check_invariants(const ExperimentConfig &cfg, int trials)
{
    cfg.validate();
    Tally analog_mono{"analog traces non-increasing", 1e-9};
    Tally leakage{"forward/backward leakage identity", 1e-9};
    Tally modulus{"constant-modulus analog entries", 1e-12};
    Tally structure{"G_R^H G_R = (N_RF/N_t) I and ||F_R F_B||^2 = (N_RF/N_t)||F_B||^2", 1e-12};
    Tally inner_mono{"inner objective non-decreasing", 1e-9};
    Tally lambda_mono{"Dinkelbach lambda non-decreasing", 1e-12};
    Tally terminal{"Dinkelbach terminal |chi| <= eps", cfg.eps};
    Tally feasible{"transmit power within budget", 1e-6};
    Tally duality{"log2 det(E_mmse^-1) equals the achieved rate", 1e-9};
    Tally ratio{"energy efficiency equals rate / consumed power", 1e-12};
    Tally circuit{"zero-signal circuit power arithmetic", 1e-12};
    Tally failures{"solves without numeric failure", 0.0};

    const SolverOptions opts = cfg.solver_options();
    const double noise = dbm_to_watts(cfg.noise_dbm);
    const SystemDims &dims = cfg.dims;
    const double scale = dims.power_scale();

    for (int t = 0; t < trials; ++t)
    {
        const std::uint64_t seed = derive_trial_seed(cfg.base_seed, static_cast<std::uint64_t>(t));
        Rng rng(seed);
        const ChannelMatrix h = generate_channel(dims, cfg.cluster, rng);
        const AnalogResult an = alternate_analog(h, rng, cfg.eps, cfg.analog_max_outer, cfg.analog_max_sweeps);

        analog_mono.flag(an.total_trace.non_increasing(), where(seed, "alternating trace"));
        for (const auto &log : an.subarray_logs)
            analog_mono.flag(log.trace.non_increasing(), where(seed, "sub-array trace"));

        const LeakageReport rep = total_interference(h, an.precoder, an.combiner);
        leakage.observe(rel(rep.forward_sum, rep.backward_sum), where(seed, "leakage"));

        const CMatrix fr = an.precoder.matrix();
        const CMatrix gr = an.combiner.matrix();
        const double m = 1.0 / std::sqrt(static_cast<double>(dims.total_antennas()));
        for (const CMatrix *b : {&fr, &gr})
        {
            double dev = 0.0;
            for (Index i = 0; i < b->rows(); ++i)
                for (Index j = 0; j < b->cols(); ++j)
                    if ((*b)(i, j) != cd(0.0, 0.0))
                        dev = std::max(dev, std::abs(std::abs((*b)(i, j)) - m));
            modulus.observe(dev, where(seed, "analog modulus"));
        }
        const Index nr = dims.n_subarrays();
        structure.observe((gr.adjoint() * gr - scale * CMatrix::Identity(nr, nr)).cwiseAbs().maxCoeff(),
                          where(seed, "G_R^H G_R"));

        for (double p_dbm : cfg.power_grid_dbm)
        {
            const double budget = dbm_to_watts(p_dbm);
            for (Solver s : cfg.solvers)
            {
                try
                {
                    const EffectiveChannel eff = s == Solver::hybrid
                                                     ? effective_channel(h, an.precoder, an.combiner, noise)
                                                     : fully_digital_channel(h, noise);
                    const ConsumptionModel cm = s == Solver::hybrid ? hybrid_consumption(dims, cfg.power_model)
                                                                    : digital_consumption(dims, cfg.power_model);
                    const DigitalSolution sol = dinkelbach_solve(eff, budget, cm, opts);
                    failures.flag(true, where(seed, to_string(s), p_dbm));

                    for (const auto &tr : sol.inner_traces)
                        for (std::size_t k = 1; k < tr.size(); ++k)
                            inner_mono.observe(tr[k - 1] - tr[k], where(seed, to_string(s), p_dbm));
                    if (opts.energy_efficiency)
                    {
                        lambda_mono.flag(sol.state.lambda_non_decreasing(), where(seed, to_string(s), p_dbm));
                        terminal.observe(std::abs(sol.state.inner_objective), where(seed, to_string(s), p_dbm));
                    }

                    const CMatrix &fb = sol.set.precoder;
                    feasible.observe((eff.power_scale * fb.squaredNorm() - budget) / budget,
                                     where(seed, to_string(s), p_dbm));
                    if (s == Solver::hybrid && fb.squaredNorm() > 0.0)
                        structure.observe(std::abs((fr * fb).squaredNorm() - scale * fb.squaredNorm()) /
                                              fb.squaredNorm(),
                                          where(seed, "||F_R F_B||", p_dbm));

                    const CMatrix e = mmse_error_closed_form(eff, fb);
                    const double rate_mse = -linalg::hermitian_log_det(e) / std::log(2.0);
                    duality.observe(rel(rate_mse, sol.metrics.rate_bits) *
                                        (std::abs(sol.metrics.rate_bits) > 1e-12 ? 1.0 : 0.0),
                                    where(seed, to_string(s), p_dbm));
                    ratio.observe(rel(sol.metrics.energy_efficiency,
                                      sol.metrics.rate_bits / sol.metrics.consumed_power),
                                  where(seed, to_string(s), p_dbm));
                }
                catch (const std::exception &ex)
                {
                    failures.flag(false, where(seed, to_string(s), p_dbm) + ": " + ex.what());
                }
            }
        }
    }

    const SystemDims ref(4, 4);
    const PowerModel pm;
    circuit.observe(std::abs(hybrid_transmit_circuit(ref, pm) + hybrid_receive_circuit(ref, pm) - 4.144),
                    "hybrid, N_t = 16, N_r = 4");
    circuit.observe(std::abs(digital_transmit_circuit(ref, pm) + digital_receive_circuit(ref, pm) - 9.016),
                    "digital, N_t = 16");

    std::vector<CheckResult> out;
    for (const Tally *t : {&analog_mono, &leakage, &modulus, &structure, &inner_mono, &lambda_mono, &terminal,
                           &feasible, &duality, &ratio, &circuit, &failures})
    {
        if (t->cases > 0)
            out.push_back(t->result());
    }
    return out;
}

} // namespace hbf::sim
