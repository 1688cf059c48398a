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
#include "chansim/random.hpp"
#include "chansim/scenario.hpp"

namespace chansim
{

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    return mix64(mix64(seed) ^ (mix64(index + 1) * 0x9E3779B97F4A7C15ULL));
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

double RandomStream::uniform_open_closed()
{
    // 53 random mantissa bits; (k + 1) / 2^53 lies in (0, 1].
    const std::uint64_t k = engine_() >> 11;
    return static_cast<double>(k + 1) * 0x1.0p-53;
}

double RandomStream::uniform_phase()
{
    const std::uint64_t k = engine_() >> 11;
    return 2.0 * pi * static_cast<double>(k) * 0x1.0p-53;
}

double RandomStream::normal() { return normal_(engine_); }

} // namespace chansim
