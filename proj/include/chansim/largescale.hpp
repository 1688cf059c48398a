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
#ifndef CHANSIM_LARGESCALE_HPP
#define CHANSIM_LARGESCALE_HPP

#include "chansim/random.hpp"
#include "chansim/scenario.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace chansim
{

// K-factor sentinel for builds without a LOS cluster.
inline constexpr double no_los_k_dB = -std::numeric_limits<double>::infinity();

// Large-scale parameters of one link.
struct LspState
{
    double ds = 0.0;    // delay spread [s]
    double k_dB = 0.0;  // Ricean K-factor
    double sf_dB = 0.0; // shadow fading, applied as a power gain

    bool has_los() const { return k_dB > no_los_k_dB; }
    bool operator==(const LspState &) const = default;
};

// Draws one LspState. The stream is consumed in the fixed order g1 (DS),
// g2 (K), g3 (SF), one standard normal each; cross-correlations, if any,
// mix the three through the Cholesky factor of their correlation matrix.
LspState draw_lsps(const ScenarioParams &scenario, RandomStream &rng);

// Spatially consistent LSPs at a list of positions. Each LSP Gaussian is an
// independent Gaussian process with covariance exp(-d / d_decorr), where d is
// horizontal distance (3D when scenario.vertical_decorrelation is set).
// Positions at zero distance share one value. The stream seeded by
// `rng_seed` supplies the DS field, then the K field, then the SF field,
// one normal per distinct position each.
std::vector<LspState> lsp_field_at(const ScenarioParams &scenario, std::span<const Vec3> positions,
                                   std::uint64_t rng_seed);

} // namespace chansim

#endif
