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

#include "hbf/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "hbf/report_io.hpp"
#include "hbf/rng.hpp"

namespace hbf::sim
{

namespace
{

bool same_metrics(const Metrics &a, const Metrics &b)
{
    return a.rate_bits == b.rate_bits && a.consumed_power == b.consumed_power &&
           a.energy_efficiency == b.energy_efficiency && a.transmit_power == b.transmit_power &&
           a.noise_power == b.noise_power;
}

bool same_outcome(const SolverOutcome &a, const SolverOutcome &b)
{
    return a.solver == b.solver && a.ok == b.ok && same_metrics(a.metrics, b.metrics) && a.lambda_ee == b.lambda_ee &&
           a.dinkelbach_converged == b.dinkelbach_converged && a.outer_lambda == b.outer_lambda &&
           a.outer_objective == b.outer_objective && a.inner_traces == b.inner_traces &&
           a.active_bisections == b.active_bisections && a.diagnostics == b.diagnostics;
}

bool same_point(const PowerPointRecord &a, const PowerPointRecord &b)
{
    return a.power_dbm == b.power_dbm &&
           std::equal(a.outcomes.begin(), a.outcomes.end(), b.outcomes.begin(), b.outcomes.end(), same_outcome);
}

bool same_subarray(const SubarrayTrace &a, const SubarrayTrace &b)
{
    return a.side == b.side && a.subarray == b.subarray && a.initial_value == b.initial_value && a.values == b.values;
}

SolverOutcome outcome_from(Solver solver, const DigitalSolution &sol)
{
    SolverOutcome out;
    out.solver = solver;
    out.ok = true;
    out.metrics = sol.metrics;
    out.lambda_ee = sol.state.lambda_ee;
    out.dinkelbach_converged = sol.state.converged;
    for (const auto &[lambda, chi] : sol.state.outer_trace)
    {
        out.outer_lambda.push_back(lambda);
        out.outer_objective.push_back(chi);
    }
    out.inner_traces = sol.inner_traces;
    out.active_bisections = sol.active_bisections;
    out.diagnostics = sol.diagnostics;
    return out;
}

SolverOutcome failed_outcome(Solver solver, std::string why)
{
    SolverOutcome out;
    out.solver = solver;
    out.diagnostics.push_back(std::move(why));
    return out;
}

} // namespace

const char *to_string(Mode mode)
{
    return mode == Mode::energy_efficiency ? "energy_efficiency" : "spectral_efficiency";
}

const char *to_string(Solver solver)
{
    return solver == Solver::hybrid ? "hybrid" : "fully_digital";
}

Mode parse_mode(const std::string &text)
{
    if (text == "ee" || text == "energy_efficiency")
        return Mode::energy_efficiency;
    if (text == "se" || text == "spectral_efficiency")
        return Mode::spectral_efficiency;
    throw std::invalid_argument("unknown mode '" + text + "' (expected ee or se)");
}

Solver parse_solver(const std::string &text)
{
    if (text == "hybrid")
        return Solver::hybrid;
    if (text == "fully_digital" || text == "digital")
        return Solver::fully_digital;
    throw std::invalid_argument("unknown solver '" + text + "' (expected hybrid or fully_digital)");
}

void ExperimentConfig::validate() const
{
    cluster.validate();
    power_model.validate();
    if (trials < 1)
        throw std::invalid_argument("config: trials must be >= 1");
    if (power_grid_dbm.empty())
        throw std::invalid_argument("config: power grid must not be empty");
    for (double p : power_grid_dbm)
        if (!std::isfinite(p))
            throw std::invalid_argument("config: power grid entries must be finite");
    if (!std::isfinite(noise_dbm))
        throw std::invalid_argument("config: noise_dbm must be finite");
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw std::invalid_argument("config: eps must be positive");
    if (solvers.empty())
        throw std::invalid_argument("config: at least one solver is required");
    if (analog_max_outer < 1 || analog_max_sweeps < 1 || digital_max_inner < 1 || digital_max_outer < 1)
        throw std::invalid_argument("config: iteration caps must be >= 1");
}

bool ExperimentConfig::runs(Solver s) const
{
    return std::find(solvers.begin(), solvers.end(), s) != solvers.end();
}

SolverOptions ExperimentConfig::solver_options() const
{
    SolverOptions o;
    o.eps = eps;
    o.max_inner = digital_max_inner;
    o.max_outer = digital_max_outer;
    o.energy_efficiency = mode == Mode::energy_efficiency;
    return o;
}

bool operator==(const TrialRecord &a, const TrialRecord &b)
{
    return a.trial_index == b.trial_index && a.seed == b.seed && a.config_hash == b.config_hash &&
           a.analog_initial == b.analog_initial && a.analog_trace == b.analog_trace &&
           std::equal(a.analog_first_pass.begin(), a.analog_first_pass.end(), b.analog_first_pass.begin(),
                      b.analog_first_pass.end(), same_subarray) &&
           a.analog_capped == b.analog_capped &&
           std::equal(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(), same_point) &&
           a.diagnostics == b.diagnostics;
}

std::uint64_t config_hash(const ExperimentConfig &cfg)
{
    // FNV-1a over the compact resolved config.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : config_to_json(cfg, -1))
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

TrialRecord run_trial(const ExperimentConfig &cfg, std::uint64_t trial_index)
{
    cfg.validate();
    TrialRecord rec;
    rec.trial_index = trial_index;
    rec.seed = derive_trial_seed(cfg.base_seed, trial_index);
    rec.config_hash = config_hash(cfg);

    Rng rng(rec.seed);
    const ChannelMatrix h = generate_channel(cfg.dims, cfg.cluster, rng);
    const double noise = dbm_to_watts(cfg.noise_dbm);
    const SolverOptions opts = cfg.solver_options();

    std::optional<AnalogResult> analog;
    std::string analog_error;
    if (cfg.runs(Solver::hybrid))
    {
        try
        {
            analog = alternate_analog(h, rng, cfg.eps, cfg.analog_max_outer, cfg.analog_max_sweeps);
        }
        catch (const std::exception &e)
        {
            analog_error = std::string("analog stage failed: ") + e.what();
            rec.diagnostics.push_back(analog_error);
        }
    }
    if (analog)
    {
        rec.analog_initial = analog->total_trace.initial_value;
        rec.analog_trace = analog->total_trace.values;
        rec.analog_capped = analog->capped_subarrays;
        for (const auto &log : analog->subarray_logs)
            if (log.outer_iteration == 1)
                rec.analog_first_pass.push_back({log.side, log.subarray, log.trace.initial_value, log.trace.values});
        if (!analog->total_trace.converged)
            rec.diagnostics.push_back("analog alternation reached the outer cap (" +
                                      std::to_string(cfg.analog_max_outer) + ")");
        if (analog->capped_subarrays > 0)
            rec.diagnostics.push_back(std::to_string(analog->capped_subarrays) +
                                      " sub-array optimization(s) reached the sweep cap");
    }

    for (double p_dbm : cfg.power_grid_dbm)
    {
        PowerPointRecord point;
        point.power_dbm = p_dbm;
        const double budget = dbm_to_watts(p_dbm);
        for (Solver s : cfg.solvers)
        {
            if (s == Solver::hybrid && !analog)
            {
                point.outcomes.push_back(failed_outcome(s, analog_error));
                continue;
            }
            try
            {
                const DigitalSolution sol =
                    s == Solver::hybrid
                        ? hybrid_digital_solve(h, analog->precoder, analog->combiner, noise, budget, cfg.power_model,
                                               opts)
                        : fully_digital_solve(h, noise, budget, cfg.power_model, opts);
                point.outcomes.push_back(outcome_from(s, sol));
            }
            catch (const std::exception &e)
            {
                point.outcomes.push_back(failed_outcome(s, std::string(to_string(s)) + " solve failed (seed " +
                                                               std::to_string(rec.seed) + "): " + e.what()));
            }
        }
        rec.points.push_back(std::move(point));
    }
    return rec;
}

std::vector<TrialRecord> run_trials(const ExperimentConfig &cfg, int threads)
{
    cfg.validate();
    const auto n = static_cast<std::size_t>(cfg.trials);
    std::vector<TrialRecord> records(n);
    const std::size_t workers = std::clamp<std::size_t>(threads < 1 ? 1 : static_cast<std::size_t>(threads), 1, n);

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&]() {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                records[i] = run_trial(cfg, i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };

    if (workers == 1)
        work();
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto &t : pool)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);
    return records;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord> &records)
{
    std::vector<const TrialRecord *> sorted;
    sorted.reserve(records.size());
    for (const auto &r : records)
        sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(),
              [](const TrialRecord *a, const TrialRecord *b) { return a->trial_index < b->trial_index; });

    std::map<std::pair<double, Solver>, SummaryRow> rows;
    for (const TrialRecord *r : sorted)
    {
        for (const auto &point : r->points)
        {
            for (const auto &o : point.outcomes)
            {
                SummaryRow &row = rows[{point.power_dbm, o.solver}];
                row.power_dbm = point.power_dbm;
                row.solver = o.solver;
                if (!o.ok)
                {
                    ++row.failures;
                    continue;
                }
                ++row.trials;
                row.mean_energy_efficiency += o.metrics.energy_efficiency;
                row.mean_rate += o.metrics.rate_bits;
                row.mean_consumed_power += o.metrics.consumed_power;
            }
        }
    }

    std::vector<SummaryRow> out;
    out.reserve(rows.size());
    for (auto &[key, row] : rows)
    {
        if (row.trials > 0)
        {
            const double n = static_cast<double>(row.trials);
            row.mean_energy_efficiency /= n;
            row.mean_rate /= n;
            row.mean_consumed_power /= n;
        }
        out.push_back(row);
    }
    return out;
}

SweepResult run_sweep(const ExperimentConfig &cfg, int threads)
{
    SweepResult res;
    res.records = run_trials(cfg, threads);
    res.summary = summarize(res.records);
    return res;
}

} // namespace hbf::sim
