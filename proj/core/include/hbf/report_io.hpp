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

#include <filesystem>
#include <string>
#include <vector>

#include "hbf/simulation.hpp"

// JSON/CSV boundary of the simulator. nlohmann/json stays inside the
// implementation; configs and records cross this interface as text or files.
namespace hbf::sim
{

// Resolved config with every default materialized.
std::string config_to_json(const ExperimentConfig &cfg, int indent = 2);

// Parses a (possibly partial) JSON config over the defaults. Unknown keys are
// rejected. Throws std::invalid_argument with the offending key.
ExperimentConfig config_from_json(const std::string &text);
ExperimentConfig load_config(const std::filesystem::path &path);

std::string records_to_json(const std::vector<TrialRecord> &records, int indent = -1);
std::vector<TrialRecord> records_from_json(const std::string &text);
std::vector<TrialRecord> load_records(const std::filesystem::path &path);

inline constexpr const char *kSummaryHeader =
    "power_dbm,solver,mean_ee_bits_per_hz_per_j,mean_rate_bits_per_s_per_hz,mean_consumed_power_w,trials,failures";
inline constexpr const char *kTracesHeader = "trial_seed,stage,loop,iteration,value";

std::string summary_csv(const std::vector<SummaryRow> &summary);

// Rows of traces.csv:
//   analog / alternating  : I_Total, iteration 0 = random start
//   analog / receive[k]   : sub-array k receive sweeps of the first outer pass
//   analog / transmit[k]  : same for the transmit side
//   <solver>@<P>dBm / outer : lambda_ee per Dinkelbach iteration
//   <solver>@<P>dBm / inner : chi per inner iteration, numbered across outer passes
std::string traces_csv(const std::vector<TrialRecord> &records);

// Writes summary.csv, traces.csv, config.json and records.json into out_dir
// (created if missing). I/O errors are std::runtime_error naming the path.
void emit_outputs(const std::vector<TrialRecord> &records, const std::vector<SummaryRow> &summary,
                  const ExperimentConfig &cfg, const std::filesystem::path &out_dir);

} // namespace hbf::sim
