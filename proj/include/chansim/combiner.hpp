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
#ifndef CHANSIM_COMBINER_HPP
#define CHANSIM_COMBINER_HPP

#include "chansim/builder.hpp"
#include "chansim/deterministic.hpp"
#include "chansim/largescale.hpp"
#include "chansim/random.hpp"
#include "chansim/scenario.hpp"

namespace chansim
{

// Merges a late-cluster CIR (with LOS) and an early-cluster CIR (NLOS only).
//
// The EC clusters receive ec_power_ratio of the combined NLOS power and the
// LC NLOS clusters the rest, each set keeping its internal power profile.
// With maintain_overall_k the NLOS total is fixed so LOS / NLOS equals
// 10^(lsp.k_dB / 10). Otherwise the LC channel is kept as built and EC power
// is added on top (NLOS total = LC NLOS / (1 - ratio)). The result is
// rescaled to the common target; zero-power clusters are dropped.
Cir combine(const Cir &lc, const Cir &ec, const CombinerConfig &cfg, const LspState &lsp);

// Received power gain of a link: -pathloss + shadow fading.
double link_power_target_dB(const GeometryLink &link, const ScenarioParams &scenario, const LspState &lsp);

// Statistical part of a configuration: one builder, or LC + EC builders and
// combine(). The EC builder reads its own substream (id 1) of `rng`, so the
// LSP and LC draws are identical across configurations for the same stream.
Cir realize_statistical(CombinerMode mode, const ScenarioParams &scenario, const CombinerConfig &cfg,
                        const LspState &lsp, double total_power_target_dB, RandomStream &rng);

// Geometry-dependent part: LOS delay and phase, target power for this link,
// and the ground reflection in GR modes. Used per height in the sweep while
// the statistical clusters stay frozen.
Cir apply_geometry(Cir cir, CombinerMode mode, const CombinerConfig &cfg, const GeometryLink &link,
                   const ScenarioParams &scenario);

// Full realization of one configuration: draw_lsps, realize_statistical,
// apply_geometry.
Cir realize_configuration(CombinerMode mode, const ScenarioParams &scenario, const CombinerConfig &cfg,
                          const GeometryLink &link, RandomStream &rng);

} // namespace chansim

#endif
