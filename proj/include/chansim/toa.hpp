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
#ifndef CHANSIM_TOA_HPP
#define CHANSIM_TOA_HPP

#include "chansim/scenario.hpp"
#include "chansim/waveform.hpp"

#include <cstddef>

namespace chansim
{

struct ToaEstimate
{
    bool detected = false;
    double toa = 0.0;   // [s] relative to the LOS reference of the frame
    double error = 0.0; // toa - true delay
    double first_path_power_dB = 0.0;
    double peak_power_dB = 0.0;
    std::size_t first_peak_index = 0;
};

// Uncalibrated inflection time of the first rising edge, or nothing.
struct EdgeDetection
{
    bool detected = false;
    double inflection_time = 0.0;
    std::size_t peak_index = 0;
    std::size_t first_peak_index = 0;
};

// Steps:
//  1. global magnitude peak;
//  2. earliest sample within edge_search_back before the peak whose
//     magnitude reaches detect_threshold_dB below the peak;
//  3. the rising edge runs from the preceding local minimum (at most
//     edge_search_back further back) up to the next local maximum; its
//     inflection is the largest first difference of the magnitude,
//     refined by a parabola through the neighbouring differences.
EdgeDetection detect_first_edge(const BandlimitedCir &blc, const ToaConfig &cfg);

// Inflection time of a clean unit tap at delay 0, i.e. the systematic lag
// of detect_first_edge. Computed once per (signal, config) and cached.
double calibrate_offset(const SignalParams &params, const ToaConfig &cfg);

// Calibrated first-path ToA. Throws NoDetection when nothing crosses the
// threshold (an all-zero frame).
ToaEstimate estimate_toa(const BandlimitedCir &blc, const ToaConfig &cfg, double true_delay = 0.0);

} // namespace chansim

#endif
