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

#include <string>
#include <vector>

#include "hbf/simulation.hpp"

namespace hbf::sim
{

struct CheckResult
{
    std::string name;
    bool passed = false;
    std::string detail;
};

// Invariant suite behind `hbf-sim check`: convergence monotonicity, leakage
// identity, constant modulus, power feasibility, rate/MSE duality and the
// circuit-power arithmetic, evaluated on `trials` seeded instances of cfg.
std::vector<CheckResult> check_invariants(const ExperimentConfig &cfg, int trials);

} // namespace hbf::sim
