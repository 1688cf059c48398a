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
#include "chansim/combiner.hpp"
#include "chansim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace chansim
{

namespace
{

double sum_nlos(const Cir &cir)
{
    double s = 0.0;
    for (const auto &c : cir.clusters)
        if (c.origin != Origin::Los)
            s += c.power;
    return s;
}

} // namespace

Cir combine(const Cir &lc, const Cir &ec, const CombinerConfig &cfg, const LspState &lsp)
{
    const Cluster *los = lc.los();
    if (!los)
        throw MissingLos("the late-cluster CIR must carry the LOS cluster");
    if (ec.los())
        throw ValidationError("the early-cluster CIR must be NLOS only");
    if (std::abs(lc.total_power_target_dB - ec.total_power_target_dB) > 1e-12)
        throw MismatchedTargets("LC and EC CIRs have different power targets");
    if (!(cfg.ec_power_ratio >= 0.0 && cfg.ec_power_ratio <= 1.0))
        throw ValidationError("ec_power_ratio must lie in [0, 1]");

    const double total = std::pow(10.0, lc.total_power_target_dB / 10.0);
    const double lc_nlos = sum_nlos(lc);
    const double ec_nlos = sum_nlos(ec);

    double ratio = cfg.ec_power_ratio;
    if (ec_nlos <= 0.0)
        ratio = 0.0;
    else if (lc_nlos <= 0.0)
        ratio = 1.0;

    double los_power = los->power;
    double nlos_total = 0.0;
    if (cfg.maintain_overall_k)
    {
        const double k_lin = std::pow(10.0, lsp.k_dB / 10.0);
        los_power = total * k_lin / (k_lin + 1.0);
        nlos_total = total / (k_lin + 1.0);
    }
    else
    {
        if (ratio >= 1.0 && lc_nlos > 0.0)
            throw ValidationError("ec_power_ratio must be < 1 when maintain_overall_k is off");
        nlos_total = ratio >= 1.0 ? ec_nlos : lc_nlos / (1.0 - ratio);
    }

    const double lc_scale = lc_nlos > 0.0 ? (1.0 - ratio) * nlos_total / lc_nlos : 0.0;
    const double ec_scale = ec_nlos > 0.0 ? ratio * nlos_total / ec_nlos : 0.0;

    Cir out;
    out.lsp = lsp;
    out.total_power_target_dB = lc.total_power_target_dB;
    out.los_delay_abs = lc.los_delay_abs;
    out.draws = lc.draws;
    for (const auto &c : lc.clusters)
    {
        Cluster m = c;
        m.power = c.origin == Origin::Los ? los_power : c.power * lc_scale;
        if (m.power > 0.0)
            out.clusters.push_back(m);
    }
    for (const auto &c : ec.clusters)
    {
        Cluster m = c;
        m.power = c.power * ec_scale;
        if (m.power > 0.0)
            out.clusters.push_back(m);
    }
    sort_by_delay(out.clusters);
    rescale_to_target(out);
    return out;
}

double link_power_target_dB(const GeometryLink &link, const ScenarioParams &scenario, const LspState &lsp)
{
    return -pathloss_dB(link, scenario) + lsp.sf_dB;
}

Cir realize_statistical(CombinerMode mode, const ScenarioParams &scenario, const CombinerConfig &cfg,
                        const LspState &lsp, double total_power_target_dB, RandomStream &rng)
{
    if (!has_two_builders(mode))
        return build_statistical_cir(scenario, lsp, rng, BuilderTag::None, total_power_target_dB);

    if (!cfg.ec_overrides.present())
        throw ValidationError("two-builder modes require EC scenario overrides");

    Cir lc = build_statistical_cir(scenario, lsp, rng, BuilderTag::LC, total_power_target_dB);

    const ScenarioParams ec_scenario = cfg.ec_overrides.apply(scenario);
    RandomStream ec_rng = rng.substream(1);
    LspState ec_lsp = draw_lsps(ec_scenario, ec_rng);
    ec_lsp.k_dB = no_los_k_dB;
    ec_lsp.sf_dB = lsp.sf_dB;
    Cir ec = build_statistical_cir(ec_scenario, ec_lsp, ec_rng, BuilderTag::EC, total_power_target_dB,
                                   DelayReference::Los);

    return combine(lc, ec, cfg, lsp);
}

Cir apply_geometry(Cir cir, CombinerMode mode, const CombinerConfig &cfg, const GeometryLink &link,
                   const ScenarioParams &scenario)
{
    const auto los = los_path(link);
    cir.los_delay_abs = los.path_length / speed_of_light;
    cir.total_power_target_dB = link_power_target_dB(link, scenario, cir.lsp);
    rescale_to_target(cir);

    if (has_ground_reflection(mode))
    {
        const DeterministicPath gr[] = {ground_reflection_path(link, cfg.reflection_loss_dB)};
        return inject_deterministic(std::move(cir), los, gr);
    }
    if (cir.los())
        return inject_deterministic(std::move(cir), los, {});
    return cir;
}

Cir realize_configuration(CombinerMode mode, const ScenarioParams &scenario, const CombinerConfig &cfg,
                          const GeometryLink &link, RandomStream &rng)
{
    const LspState lsp = draw_lsps(scenario, rng);
    Cir cir = realize_statistical(mode, scenario, cfg, lsp, link_power_target_dB(link, scenario, lsp), rng);
    return apply_geometry(std::move(cir), mode, cfg, link, scenario);
}

} // namespace chansim
