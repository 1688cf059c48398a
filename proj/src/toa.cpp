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
#include "chansim/toa.hpp"
#include "chansim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace chansim
{

EdgeDetection detect_first_edge(const BandlimitedCir &blc, const ToaConfig &cfg)
{
    EdgeDetection out;
    const std::size_t n = blc.samples.size();
    if (n < 3)
        return out;

    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i)
        mag[i] = std::abs(blc.samples[i]);

    const auto peak = static_cast<std::size_t>(std::max_element(mag.begin(), mag.end()) - mag.begin());
    if (!(mag[peak] > 0.0))
        return out;
    const double threshold = mag[peak] * std::pow(10.0, -cfg.detect_threshold_dB / 20.0);
    const auto back = static_cast<std::size_t>(std::ceil(cfg.edge_search_back_s / blc.sample_period));

    // Earliest threshold crossing before the peak; its local maximum is
    // within the threshold of the global peak by construction.
    const std::size_t window_start = peak > back ? peak - back : 0;
    std::size_t cross = peak;
    for (std::size_t i = window_start; i <= peak; ++i)
    {
        if (mag[i] >= threshold)
        {
            cross = i;
            break;
        }
    }

    std::size_t top = cross;
    while (top + 1 < n && mag[top + 1] >= mag[top])
        ++top;

    std::size_t start = cross;
    const std::size_t floor_index = cross > back ? cross - back : 0;
    while (start > floor_index && mag[start - 1] <= mag[start])
        --start;

    out.detected = true;
    out.peak_index = peak;
    out.first_peak_index = top;

    if (top == start)
    {
        out.inflection_time = blc.time_at(top);
        return out;
    }

    // d[j] = mag[j + 1] - mag[j] lives at sample position j + 1/2.
    std::size_t best = start;
    double best_slope = -1.0;
    for (std::size_t j = start; j < top; ++j)
    {
        const double slope = mag[j + 1] - mag[j];
        if (slope > best_slope)
        {
            best_slope = slope;
            best = j;
        }
    }

    double offset = 0.0;
    if (best > start && best + 1 < top)
    {
        const double dm = mag[best] - mag[best - 1];
        const double d0 = best_slope;
        const double dp = mag[best + 2] - mag[best + 1];
        const double curvature = dm - 2.0 * d0 + dp;
        if (curvature < 0.0)
            offset = std::clamp(0.5 * (dm - dp) / curvature, -0.5, 0.5);
    }
    out.inflection_time = blc.time_at(best) + (0.5 + offset) * blc.sample_period;
    return out;
}

double calibrate_offset(const SignalParams &params, const ToaConfig &cfg)
{
    using Key = std::tuple<double, double, double, double, double, int, int, double, double>;
    static std::mutex mutex;
    static std::map<Key, double> cache;

    const Key key{params.bandwidth_hz, params.sample_rate_hz, params.subcarrier_spacing_hz, params.window_s,
                  params.pre_roll_s,   params.oversample,     params.comb,                  cfg.detect_threshold_dB,
                  cfg.edge_search_back_s};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }

    Cir unit;
    Cluster c;
    c.power = 1.0;
    c.origin = Origin::Los;
    unit.clusters.push_back(c);
    const auto edge = detect_first_edge(bandlimited_cir(unit, params), cfg);
    const double offset = edge.inflection_time;

    std::lock_guard lock(mutex);
    cache.emplace(key, offset);
    return offset;
}

ToaEstimate estimate_toa(const BandlimitedCir &blc, const ToaConfig &cfg, double true_delay)
{
    const auto edge = detect_first_edge(blc, cfg);
    if (!edge.detected)
        throw NoDetection("no sample exceeds the detection threshold");

    ToaEstimate est;
    est.detected = true;
    est.toa = edge.inflection_time - calibrate_offset(blc.params, cfg);
    est.error = est.toa - true_delay;
    est.first_peak_index = edge.first_peak_index;
    est.first_path_power_dB = 20.0 * std::log10(std::abs(blc.samples[edge.first_peak_index]));
    est.peak_power_dB = 20.0 * std::log10(std::abs(blc.samples[edge.peak_index]));
    return est;
}

} // namespace chansim
