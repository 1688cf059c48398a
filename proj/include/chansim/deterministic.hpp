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
#ifndef CHANSIM_DETERMINISTIC_HPP
#define CHANSIM_DETERMINISTIC_HPP

#include "chansim/builder.hpp"
#include "chansim/scenario.hpp"

#include <span>

namespace chansim
{

// A geometric ray. Phase is -2 pi L / lambda wrapped to [0, 2 pi).
struct DeterministicPath
{
    double path_length = 0.0;       // [m]
    double excess_delay = 0.0;      // [s] behind the LOS
    double phase = 0.0;
    double amplitude_gain_dB = 0.0; // 0 for LOS, -reflection loss otherwise
};

double geometric_phase(double path_length, double wavelength);

DeterministicPath los_path(const GeometryLink &link);

// Specular bounce off the ground plane z = 0 via the UE's mirror image.
// Throws InvalidGeometry unless both antenna heights are positive.
DeterministicPath ground_reflection_path(const GeometryLink &link, double reflection_loss_dB);

// Overwrites the LOS phase with `los.phase`, appends each reflection as a
// GroundReflection cluster at its excess delay with power
// P_LOS * 10^(gain / 10), then rescales to the original target.
// Throws MissingLos when the CIR has no LOS cluster.
Cir inject_deterministic(Cir cir, const DeterministicPath &los, std::span<const DeterministicPath> reflections);

} // namespace chansim

#endif
