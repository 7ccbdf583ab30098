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
#include <random>

#include "hbf/types.hpp"

namespace hbf
{

// SplitMix64 finalizer. Used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed of trial `trial_index` in a sweep seeded with `base_seed`.
std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::uint64_t trial_index);

// Seeded random source. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; all distribution transforms are implemented here
// so draws are identical across standard libraries.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller (one value per call, no caching).
    double normal();

    // Zero-mean Laplacian with the given standard deviation (inverse CDF).
    double laplace(double stddev);

    // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    cd complex_normal(double variance);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace hbf
