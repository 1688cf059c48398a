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
#include "chansim/deterministic.hpp"
#include "chansim/errors.hpp"

#include <cmath>

namespace chansim
{

double geometric_phase(double path_length, double wavelength)
{
    double ph = std::fmod(-2.0 * pi * path_length / wavelength, 2.0 * pi);
    if (ph < 0.0)
        ph += 2.0 * pi;
    if (ph >= 2.0 * pi)
        ph = 0.0;
    return ph;
}

DeterministicPath los_path(const GeometryLink &link)
{
    DeterministicPath p;
    p.path_length = link.distance();
    p.excess_delay = 0.0;
    p.phase = geometric_phase(p.path_length, link.wavelength());
    p.amplitude_gain_dB = 0.0;
    return p;
}

DeterministicPath ground_reflection_path(const GeometryLink &link, double reflection_loss_dB)
{
    const double h_bs = link.bs.z;
    const double h_ue = link.ue.z;
    if (!(h_bs > 0.0) || !(h_ue > 0.0))
        throw InvalidGeometry("ground reflection needs both antenna heights above the ground plane");

    const double d_h = distance_2d(link.bs, link.ue);
    const double los_len = std::hypot(d_h, h_bs - h_ue);
    const double gr_len = std::hypot(d_h, h_bs + h_ue);

    DeterministicPath p;
    p.path_length = gr_len;
    // (gr^2 - los^2) = 4 h_bs h_ue, which avoids cancellation in gr - los.
    p.excess_delay = 4.0 * h_bs * h_ue / (gr_len + los_len) / speed_of_light;
    p.phase = geometric_phase(gr_len, link.wavelength());
    p.amplitude_gain_dB = -reflection_loss_dB;
    return p;
}

Cir inject_deterministic(Cir cir, const DeterministicPath &los, std::span<const DeterministicPath> reflections)
{
    Cluster *los_cluster = cir.los();
    if (!los_cluster)
        throw MissingLos("deterministic paths need a LOS cluster to attach to");
    los_cluster->phase = los.phase;
    const double los_power = los_cluster->power;

    for (const auto &path : reflections)
    {
        Cluster c;
        c.delay = path.excess_delay;
        c.power = los_power * std::pow(10.0, path.amplitude_gain_dB / 10.0);
        c.phase = path.phase;
        c.origin = Origin::GroundReflection;
        c.tag = BuilderTag::None;
        cir.clusters.push_back(c);
    }
    if (!reflections.empty())
    {
        sort_by_delay(cir.clusters);
        rescale_to_target(cir);
    }
    return cir;
}

} // namespace chansim
