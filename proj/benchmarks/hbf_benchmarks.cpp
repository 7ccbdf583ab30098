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

#include <benchmark/benchmark.h>

#include "hbf/analog_stage.hpp"
#include "hbf/channel_model.hpp"
#include "hbf/digital_stage.hpp"

using namespace hbf;

namespace
{

SystemDims dims_from(const benchmark::State &state)
{
    return SystemDims(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
}

void BM_GenerateChannel(benchmark::State &state)
{
    const SystemDims dims = dims_from(state);
    Rng rng(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_channel(dims, ClusterConfig{}, rng));
}
BENCHMARK(BM_GenerateChannel)->Args({4, 8})->Args({8, 8})->Unit(benchmark::kMicrosecond);

void BM_AlternateAnalog(benchmark::State &state)
{
    const SystemDims dims = dims_from(state);
    Rng rng(2);
    const ChannelMatrix h = generate_channel(dims, ClusterConfig{}, rng);
    for (auto _ : state)
    {
        Rng init(3);
        benchmark::DoNotOptimize(alternate_analog(h, init));
    }
}
BENCHMARK(BM_AlternateAnalog)->Args({4, 8})->Args({8, 8})->Unit(benchmark::kMillisecond);

void BM_HybridDinkelbach(benchmark::State &state)
{
    const SystemDims dims(8, 8);
    Rng rng(4);
    const ChannelMatrix h = generate_channel(dims, ClusterConfig{}, rng);
    const auto an = alternate_analog(h, rng);
    const double budget = dbm_to_watts(static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(hybrid_digital_solve(h, an.precoder, an.combiner, 1e-3, budget, PowerModel{}));
}
BENCHMARK(BM_HybridDinkelbach)->Arg(-10)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_FullyDigital(benchmark::State &state)
{
    const SystemDims dims(4, 8);
    Rng rng(5);
    const ChannelMatrix h = generate_channel(dims, ClusterConfig{}, rng);
    const double budget = dbm_to_watts(static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(fully_digital_solve(h, 1e-3, budget, PowerModel{}));
}
BENCHMARK(BM_FullyDigital)->Arg(-10)->Arg(20)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
