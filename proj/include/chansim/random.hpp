// SPDX-License-Identifier: Apache-2.0
//
// chansim - statistical radio channel simulation for positioning evaluation
// Copyright (C) 2026 The chansim authors
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
#ifndef CHANSIM_RANDOM_HPP
#define CHANSIM_RANDOM_HPP

#include <cstdint>
#include <random>

namespace chansim
{

// SplitMix64 finalizer, used to derive independent substream seeds.
std::uint64_t mix64(std::uint64_t x);

// Seed of substream `index` (a drop, a builder) under `seed`:
// mix64(mix64(seed) ^ (mix64(index + 1) * 0x9E3779B97F4A7C15)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// One reproducible random stream. Each call consumes from a std::mt19937_64.
class RandomStream
{
public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    // Uniform on (0, 1].
    double uniform_open_closed();

    // Uniform on [0, 2 pi).
    double uniform_phase();

    double normal();

    // Independent stream keyed by `id`; does not consume from this stream.
    RandomStream substream(std::uint64_t id) const { return RandomStream(derive_seed(seed_, id)); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

} // namespace chansim

#endif
