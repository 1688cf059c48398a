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
#ifndef CHANSIM_METRICS_HPP
#define CHANSIM_METRICS_HPP

#include "chansim/builder.hpp"

#include <span>
#include <vector>

namespace chansim
{

struct BandlimitedCir;
struct ToaEstimate;

// K-factor restricted to NLOS power arriving before the window Upsilon.
// no_ec marks an empty window; value_dB is then +inf.
struct KecValue
{
    bool no_ec = true;
    double value_dB = 0.0;
};

// 10 log10(P_LOS / sum of NLOS cluster powers with delay < upsilon).
// Ground reflections count as NLOS clusters here.
KecValue kec(const Cir &cir, double upsilon);

// Ricean K of the CIR: specular power (LOS plus deterministic ground
// reflections) over the statistical cluster power, in dB. +inf when there
// is no statistical power. Equal to kec(cir, inf) for CIRs without
// deterministic reflections.
double overall_k(const Cir &cir);

// Power-weighted RMS delay spread.
double rms_delay_spread(const Cir &cir);

// Right-continuous empirical CDF of `samples` evaluated at each point.
std::vector<double> ecdf(std::span<const double> samples, std::span<const double> eval_points);

// Quantile with linear interpolation between order statistics (q in [0, 1]).
double quantile(std::span<const double> samples, double q);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

struct BandPowers
{
    double rsrp_dB = 0.0;  // in-band power of the whole CIR
    double rsrpp_dB = 0.0; // power of the detected first-path lobe peak
};

BandPowers band_powers(const BandlimitedCir &blc, const ToaEstimate &toa);

} // namespace chansim

#endif
