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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hbf/analog_stage.hpp"
#include "hbf/channel_model.hpp"
#include "hbf/digital_stage.hpp"
#include "hbf/metrics.hpp"

namespace hbf::sim
{

enum class Mode
{
    energy_efficiency,
    spectral_efficiency
};

enum class Solver
{
    hybrid,
    fully_digital
};

const char *to_string(Mode mode);
const char *to_string(Solver solver);
Mode parse_mode(const std::string &text);     // "ee" | "se" | full names
Solver parse_solver(const std::string &text); // "hybrid" | "fully_digital"

// Sweep configuration. Defaults: N_t = 32 (4 sub-arrays of 8), 8 clusters of
// 10 rays, 5 degree spread, noise 0 dBm, -10..40 dBm power grid in 5 dB steps,
// 200 trials, eps 1e-4, both solvers in energy-efficiency mode.
struct ExperimentConfig
{
    SystemDims dims{4, 8};
    ClusterConfig cluster;
    std::vector<double> power_grid_dbm{-10, -5, 0, 5, 10, 15, 20, 25, 30, 35, 40};
    double noise_dbm = 0.0;
    PowerModel power_model;
    int trials = 200;
    std::uint64_t base_seed = 1;
    double eps = 1e-4;
    Mode mode = Mode::energy_efficiency;
    std::vector<Solver> solvers{Solver::hybrid, Solver::fully_digital};

    int analog_max_outer = kDefaultMaxOuter;
    int analog_max_sweeps = kDefaultMaxSweeps;
    int digital_max_inner = 500;
    int digital_max_outer = 50;

    void validate() const;
    bool runs(Solver s) const;
    SolverOptions solver_options() const;
};

struct SolverOutcome
{
    Solver solver = Solver::hybrid;
    bool ok = false;
    Metrics metrics;
    double lambda_ee = 0.0;
    bool dinkelbach_converged = false;
    std::vector<double> outer_lambda;              // lambda_ee per outer iteration
    std::vector<double> outer_objective;           // inner objective per outer iteration
    std::vector<std::vector<double>> inner_traces; // chi per inner iteration, per outer
    int active_bisections = 0;
    std::vector<std::string> diagnostics;
};

struct PowerPointRecord
{
    double power_dbm = 0.0;
    std::vector<SolverOutcome> outcomes;
};

struct SubarrayTrace
{
    Side side = Side::receive;
    int subarray = 0;
    double initial_value = 0.0;
    std::vector<double> values;
};

struct TrialRecord
{
    std::uint64_t trial_index = 0;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    double analog_initial = 0.0;
    std::vector<double> analog_trace;           // I_Total per outer iteration
    std::vector<SubarrayTrace> analog_first_pass; // per-sub-array sweeps of outer iteration 1
    int analog_capped = 0;
    std::vector<PowerPointRecord> points;
    std::vector<std::string> diagnostics;

    friend bool operator==(const TrialRecord &, const TrialRecord &);
};

struct SummaryRow
{
    double power_dbm = 0.0;
    Solver solver = Solver::hybrid;
    double mean_energy_efficiency = 0.0; // bits/Hz/J
    double mean_rate = 0.0;              // bits/s/Hz
    double mean_consumed_power = 0.0;    // watts
    int trials = 0;                      // successful trials
    int failures = 0;

    friend bool operator==(const SummaryRow &, const SummaryRow &) = default;
};

std::uint64_t config_hash(const ExperimentConfig &cfg);

TrialRecord run_trial(const ExperimentConfig &cfg, std::uint64_t trial_index);

// Runs every trial (in parallel up to `threads`); records come back ordered by
// trial index regardless of scheduling.
std::vector<TrialRecord> run_trials(const ExperimentConfig &cfg, int threads = 1);

// Per (power point, solver) means over the successful trials, sorted by power
// then solver.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord> &records);

struct SweepResult
{
    std::vector<TrialRecord> records;
    std::vector<SummaryRow> summary;
};

SweepResult run_sweep(const ExperimentConfig &cfg, int threads = 1);

} // namespace hbf::sim
