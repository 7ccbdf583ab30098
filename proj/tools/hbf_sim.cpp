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

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "hbf/invariants.hpp"
#include "hbf/report_io.hpp"
#include "hbf/simulation.hpp"

namespace
{

struct Common
{
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    int threads = 0;
    std::optional<std::string> mode;
};

void add_common(CLI::App *cmd, Common &c)
{
    cmd->add_option("--config", c.config, "JSON experiment config (missing keys take defaults)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", c.out, "Output directory");
    cmd->add_option("--seed", c.seed, "Base seed");
    cmd->add_option("--trials", c.trials, "Number of trials")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", c.threads, "Worker threads (0 = hardware concurrency)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--mode", c.mode, "ee (energy efficiency) or se (spectral efficiency)")
        ->check(CLI::IsMember({"ee", "se", "energy_efficiency", "spectral_efficiency"}));
}

hbf::sim::ExperimentConfig resolve(const Common &c)
{
    hbf::sim::ExperimentConfig cfg = c.config.empty() ? hbf::sim::ExperimentConfig{} : hbf::sim::load_config(c.config);
    if (c.seed)
        cfg.base_seed = *c.seed;
    if (c.trials)
        cfg.trials = *c.trials;
    if (c.mode)
        cfg.mode = hbf::sim::parse_mode(*c.mode);
    cfg.validate();
    return cfg;
}

int thread_count(int requested)
{
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void print_summary(const std::vector<hbf::sim::SummaryRow> &summary)
{
    std::printf("%10s  %-13s  %14s  %12s  %12s  %6s  %8s\n", "P [dBm]", "solver", "EE [bit/Hz/J]", "rate [b/s/Hz]",
                "P_con [W]", "trials", "failures");
    for (const auto &r : summary)
        std::printf("%10g  %-13s  %14.6g  %12.6g  %12.6g  %6d  %8d\n", r.power_dbm, hbf::sim::to_string(r.solver),
                    r.mean_energy_efficiency, r.mean_rate, r.mean_consumed_power, r.trials, r.failures);
}

int cmd_run(const Common &c)
{
    const auto cfg = resolve(c);
    const auto sweep = hbf::sim::run_sweep(cfg, thread_count(c.threads));
    print_summary(sweep.summary);
    if (!c.out.empty())
    {
        hbf::sim::emit_outputs(sweep.records, sweep.summary, cfg, c.out);
        std::printf("wrote %s\n", c.out.c_str());
    }
    return 0;
}

int cmd_trial(const Common &c, std::uint64_t index)
{
    auto cfg = resolve(c);
    cfg.trials = 1;
    const auto rec = hbf::sim::run_trial(cfg, index);
    const std::vector<hbf::sim::TrialRecord> records{rec};
    std::printf("trial %llu, seed %llu, config hash %016llx\n", static_cast<unsigned long long>(rec.trial_index),
                static_cast<unsigned long long>(rec.seed), static_cast<unsigned long long>(rec.config_hash));
    std::cout << hbf::sim::traces_csv(records);
    for (const auto &d : rec.diagnostics)
        std::printf("diagnostic: %s\n", d.c_str());
    for (const auto &p : rec.points)
        for (const auto &o : p.outcomes)
            for (const auto &d : o.diagnostics)
                std::printf("diagnostic: %s @%gdBm: %s\n", hbf::sim::to_string(o.solver), p.power_dbm, d.c_str());
    const auto summary = hbf::sim::summarize(records);
    print_summary(summary);
    if (!c.out.empty())
        hbf::sim::emit_outputs(records, summary, cfg, c.out);
    return 0;
}

int cmd_check(const Common &c)
{
    auto cfg = resolve(c);
    const int trials = c.trials ? *c.trials : 3;
    const auto results = hbf::sim::check_invariants(cfg, trials);
    bool ok = true;
    for (const auto &r : results)
    {
        std::printf("%s  %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"hbf-sim: energy-efficient hybrid beamforming simulator"};
    app.require_subcommand(1);

    Common run_opts, trial_opts, check_opts;
    std::uint64_t trial_index = 0;

    auto *run = app.add_subcommand("run", "Monte Carlo sweep over trials and the power grid");
    add_common(run, run_opts);
    auto *trial = app.add_subcommand("trial", "Single trial with verbose traces");
    add_common(trial, trial_opts);
    trial->add_option("--index", trial_index, "Trial index under the base seed");
    auto *check = app.add_subcommand("check", "Invariant suite; exit status 1 on any failure");
    add_common(check, check_opts);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (run->parsed())
            return cmd_run(run_opts);
        if (trial->parsed())
            return cmd_trial(trial_opts, trial_index);
        return cmd_check(check_opts);
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "hbf-sim: %s\n", e.what());
        return 2;
    }
}
