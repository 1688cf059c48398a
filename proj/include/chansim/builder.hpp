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
#ifndef CHANSIM_BUILDER_HPP
#define CHANSIM_BUILDER_HPP

#include "chansim/largescale.hpp"
#include "chansim/random.hpp"
#include "chansim/scenario.hpp"

#include <span>
#include <vector>

namespace chansim
{

enum class Origin
{
    Los,
    Statistical,
    GroundReflection
};

enum class BuilderTag
{
    None,
    EC,
    LC
};

const char *to_string(Origin origin);
const char *to_string(BuilderTag tag);

// Random inputs of one cluster: the uniform variate of the delay equation and
// the per-cluster shadowing term in dB.
struct ClusterDraw
{
    double x = 1.0;    // (0, 1]
    double z_dB = 0.0;
};

struct Cluster
{
    double delay = 0.0; // [s] relative to the LOS
    double power = 0.0; // linear
    double phase = 0.0; // [0, 2 pi)
    Origin origin = Origin::Statistical;
    BuilderTag tag = BuilderTag::None;
};

// Wideband CIR: one tap per cluster, ascending delay, LOS (when present) at 0.
struct Cir
{
    std::vector<Cluster> clusters;
    double los_delay_abs = 0.0;         // d / c of the LOS path [s]
    double total_power_target_dB = 0.0; // sum of powers equals 10^(target / 10)
    LspState lsp;
    std::vector<ClusterDraw> draws;     // inputs of the statistical clusters, for inspection

    double total_power() const;
    const Cluster *los() const;
    Cluster *los();
};

// Raw delays -r_tau * DS * ln(x_n), in draw order.
std::vector<double> raw_cluster_delays(const ScenarioParams &scenario, const LspState &lsp,
                                       std::span<const ClusterDraw> draws);

// Raw delays shifted so the smallest is zero, sorted ascending.
std::vector<double> draw_cluster_delays(const ScenarioParams &scenario, const LspState &lsp,
                                        std::span<const ClusterDraw> draws);

// exp(-tau_n (r_tau - 1) / (r_tau DS)) * 10^(z_n / 10) on the raw (unshifted)
// delays. Not normalized.
std::vector<double> draw_cluster_powers(const ScenarioParams &scenario, const LspState &lsp,
                                        std::span<const double> delays_raw, std::span<const ClusterDraw> draws);

// K-dependent LOS delay scaling C_tau; NLOS delays of a LOS build are divided
// by it. K below -30 dB is evaluated at -30 dB. The cubic decreases up to
// about 25.5 dB and rises slowly beyond.
double los_delay_scaling(double k_dB);

// Scales NLOS clusters to 1 / (K + 1) of the target power and inserts a LOS
// cluster at delay 0 carrying K / (K + 1). With k_dB = no_los_k_dB no LOS
// cluster is added.
Cir apply_k_and_normalize(std::vector<Cluster> nlos, const LspState &lsp, double total_power_target_dB);

// Where the delay axis of a statistical build starts.
enum class DelayReference
{
    EarliestCluster, // shift so the earliest cluster sits at 0 (the LOS anchor in LOS builds)
    Los              // keep raw delays as excess delays behind the LOS (early-cluster builder)
};

// One small-scale realization. Stream order: N uniforms x_n, N normals for
// z_n, N uniform phases. In LOS builds the earliest drawn cluster is the LOS
// anchor: it defines delay 0 and carries the LOS ray, and the other N - 1
// clusters become NLOS taps with delays divided by los_delay_scaling(K) when
// the scenario enables it.
Cir build_statistical_cir(const ScenarioParams &scenario, const LspState &lsp, RandomStream &rng,
                          BuilderTag tag = BuilderTag::None, double total_power_target_dB = 0.0,
                          DelayReference reference = DelayReference::EarliestCluster);

void sort_by_delay(std::vector<Cluster> &clusters);

// Rescales all cluster powers so their sum equals the Cir's target.
void rescale_to_target(Cir &cir);

} // namespace chansim

#endif
