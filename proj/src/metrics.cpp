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
#include "chansim/metrics.hpp"
#include "chansim/errors.hpp"
#include "chansim/toa.hpp"
#include "chansim/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chansim
{

namespace
{

const Cluster &require_los(const Cir &cir)
{
    const Cluster *los = cir.los();
    if (!los || !(los->power > 0.0))
        throw MissingLos("K-factor metrics need a LOS cluster with positive power");
    return *los;
}

} // namespace

KecValue kec(const Cir &cir, double upsilon)
{
    const double p_los = require_los(cir).power;
    double sum = 0.0;
    bool any = false;
    for (const auto &c : cir.clusters)
    {
        if (c.origin == Origin::Los || !(c.delay < upsilon))
            continue;
        any = true;
        sum += c.power;
    }
    KecValue out;
    out.no_ec = !any;
    out.value_dB = (any && sum > 0.0) ? 10.0 * std::log10(p_los / sum) : std::numeric_limits<double>::infinity();
    return out;
}

double overall_k(const Cir &cir)
{
    require_los(cir);
    double specular = 0.0;
    double diffuse = 0.0;
    for (const auto &c : cir.clusters)
        (c.origin == Origin::Statistical ? diffuse : specular) += c.power;
    if (!(diffuse > 0.0))
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(specular / diffuse);
}

double rms_delay_spread(const Cir &cir)
{
    double p = 0.0, m1 = 0.0, m2 = 0.0;
    for (const auto &c : cir.clusters)
    {
        p += c.power;
        m1 += c.power * c.delay;
        m2 += c.power * c.delay * c.delay;
    }
    if (!(p > 0.0))
        throw AllZeroPower("delay spread of a CIR without power");
    m1 /= p;
    m2 /= p;
    return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

std::vector<double> ecdf(std::span<const double> samples, std::span<const double> eval_points)
{
    if (samples.empty())
        throw EmptySamples("ecdf of an empty sample set");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    out.reserve(eval_points.size());
    const auto n = static_cast<double>(sorted.size());
    for (double x : eval_points)
        out.push_back(static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) / n);
    return out;
}

double quantile(std::span<const double> samples, double q)
{
    if (samples.empty())
        throw EmptySamples("quantile of an empty sample set");
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(s.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, s.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0)
        return s[lo];
    return s[lo] + frac * (s[hi] - s[lo]);
}

double ks_statistic(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty())
        throw EmptySamples("KS statistic needs two non-empty samples");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size())
    {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v)
            ++i;
        while (j < y.size() && y[j] == v)
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

BandPowers band_powers(const BandlimitedCir &blc, const ToaEstimate &toa)
{
    if (!toa.detected)
        throw NoDetection("no first path to measure");
    BandPowers out;
    out.rsrp_dB = 10.0 * std::log10(blc.band_power);
    out.rsrpp_dB = toa.first_path_power_dB;
    return out;
}

} // namespace chansim
