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
#include "chansim/builder.hpp"
#include "chansim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace chansim
{

const char *to_string(Origin origin)
{
    switch (origin)
    {
    case Origin::Los:
        return "LOS";
    case Origin::Statistical:
        return "statistical";
    case Origin::GroundReflection:
        return "ground_reflection";
    }
    return "?";
}

const char *to_string(BuilderTag tag)
{
    switch (tag)
    {
    case BuilderTag::None:
        return "none";
    case BuilderTag::EC:
        return "EC";
    case BuilderTag::LC:
        return "LC";
    }
    return "?";
}

double Cir::total_power() const
{
    double sum = 0.0;
    for (const auto &c : clusters)
        sum += c.power;
    return sum;
}

const Cluster *Cir::los() const
{
    for (const auto &c : clusters)
        if (c.origin == Origin::Los)
            return &c;
    return nullptr;
}

Cluster *Cir::los()
{
    return const_cast<Cluster *>(std::as_const(*this).los());
}

std::vector<double> raw_cluster_delays(const ScenarioParams &scenario, const LspState &lsp,
                                       std::span<const ClusterDraw> draws)
{
    std::vector<double> tau(draws.size());
    for (std::size_t n = 0; n < draws.size(); ++n)
    {
        if (!(draws[n].x > 0.0) || draws[n].x > 1.0)
            throw DegenerateDraw("cluster draw x_n must lie in (0, 1], got " + std::to_string(draws[n].x));
        tau[n] = -scenario.r_tau * lsp.ds * std::log(draws[n].x);
    }
    return tau;
}

std::vector<double> draw_cluster_delays(const ScenarioParams &scenario, const LspState &lsp,
                                        std::span<const ClusterDraw> draws)
{
    auto tau = raw_cluster_delays(scenario, lsp, draws);
    if (tau.empty())
        return tau;
    const double lo = *std::min_element(tau.begin(), tau.end());
    for (auto &t : tau)
        t -= lo;
    std::sort(tau.begin(), tau.end());
    return tau;
}

std::vector<double> draw_cluster_powers(const ScenarioParams &scenario, const LspState &lsp,
                                        std::span<const double> delays_raw, std::span<const ClusterDraw> draws)
{
    if (delays_raw.size() != draws.size())
        throw ValidationError("delay and draw lists differ in length");
    const double rate = (scenario.r_tau - 1.0) / (scenario.r_tau * lsp.ds);
    std::vector<double> p(draws.size());
    for (std::size_t n = 0; n < draws.size(); ++n)
        p[n] = std::exp(-delays_raw[n] * rate) * std::pow(10.0, draws[n].z_dB / 10.0);
    return p;
}

double los_delay_scaling(double k_dB)
{
    const double k = std::max(k_dB, -30.0);
    return 0.7705 - 0.0433 * k + 0.0002 * k * k + 0.000017 * k * k * k;
}

void sort_by_delay(std::vector<Cluster> &clusters)
{
    std::stable_sort(clusters.begin(), clusters.end(),
                     [](const Cluster &a, const Cluster &b) { return a.delay < b.delay; });
}

void rescale_to_target(Cir &cir)
{
    const double sum = cir.total_power();
    if (!(sum > 0.0))
        throw AllZeroPower("CIR carries no power");
    const double scale = std::pow(10.0, cir.total_power_target_dB / 10.0) / sum;
    for (auto &c : cir.clusters)
        c.power *= scale;
}

Cir apply_k_and_normalize(std::vector<Cluster> nlos, const LspState &lsp, double total_power_target_dB)
{
    if (nlos.empty())
        throw AllZeroPower("no clusters to normalize");
    double sum = 0.0;
    for (const auto &c : nlos)
    {
        if (!(c.power >= 0.0))
            throw ValidationError("cluster powers must be non-negative");
        sum += c.power;
    }
    if (!(sum > 0.0))
        throw AllZeroPower("all cluster powers are zero");

    const double total = std::pow(10.0, total_power_target_dB / 10.0);
    const double k_lin = lsp.has_los() ? std::pow(10.0, lsp.k_dB / 10.0) : 0.0;

    const double nlos_scale = total / (k_lin + 1.0) / sum;
    for (auto &c : nlos)
        c.power *= nlos_scale;

    Cir cir;
    cir.lsp = lsp;
    cir.total_power_target_dB = total_power_target_dB;
    if (k_lin > 0.0)
    {
        Cluster los;
        los.delay = 0.0;
        los.power = total * k_lin / (k_lin + 1.0);
        los.origin = Origin::Los;
        cir.clusters.push_back(los);
    }
    cir.clusters.insert(cir.clusters.end(), nlos.begin(), nlos.end());
    sort_by_delay(cir.clusters);
    return cir;
}

Cir build_statistical_cir(const ScenarioParams &scenario, const LspState &lsp, RandomStream &rng, BuilderTag tag,
                          double total_power_target_dB, DelayReference reference)
{
    const auto n_clusters = static_cast<std::size_t>(scenario.num_clusters);
    std::vector<ClusterDraw> draws(n_clusters);
    for (auto &d : draws)
        d.x = rng.uniform_open_closed();
    for (auto &d : draws)
        d.z_dB = scenario.zeta_dB * rng.normal();
    std::vector<double> phases(n_clusters);
    for (auto &ph : phases)
        ph = rng.uniform_phase();

    const auto raw = raw_cluster_delays(scenario, lsp, draws);
    const auto power = draw_cluster_powers(scenario, lsp, raw, draws);

    const auto anchor = static_cast<std::size_t>(std::min_element(raw.begin(), raw.end()) - raw.begin());
    const bool los = lsp.has_los();

    double origin = 0.0;
    if (los || reference == DelayReference::EarliestCluster)
        origin = raw[anchor];
    const double stretch = (los && scenario.los_delay_scaling) ? 1.0 / los_delay_scaling(lsp.k_dB) : 1.0;

    std::vector<Cluster> nlos;
    nlos.reserve(n_clusters);
    for (std::size_t n = 0; n < n_clusters; ++n)
    {
        if (los && n == anchor)
            continue;
        Cluster c;
        c.delay = (raw[n] - origin) * stretch;
        c.power = power[n];
        c.phase = phases[n];
        c.origin = Origin::Statistical;
        c.tag = tag;
        nlos.push_back(c);
    }

    Cir cir;
    if (nlos.empty())
    {
        // Single-cluster LOS build: the LOS ray carries everything.
        cir.lsp = lsp;
        cir.total_power_target_dB = total_power_target_dB;
        Cluster c;
        c.power = std::pow(10.0, total_power_target_dB / 10.0);
        c.origin = Origin::Los;
        cir.clusters.push_back(c);
    }
    else
    {
        cir = apply_k_and_normalize(std::move(nlos), lsp, total_power_target_dB);
    }
    cir.draws = std::move(draws);
    return cir;
}

} // namespace chansim
