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
#ifndef CHANSIM_WAVEFORM_HPP
#define CHANSIM_WAVEFORM_HPP

#include "chansim/builder.hpp"
#include "chansim/random.hpp"
#include "chansim/scenario.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace chansim
{

using cdouble = std::complex<double>;

// Correlation-equivalent CIR sampled at sample_rate * oversample. Sample i
// sits at delay (i - los_index) * sample_period relative to the LOS.
struct BandlimitedCir
{
    std::vector<cdouble> samples;
    double time_origin = 0.0; // delay of sample 0 [s], <= 0
    double sample_period = 0.0;
    std::size_t los_index = 0;
    double band_power = 0.0;  // mean |H(f_k)|^2 over the occupied tones
    SignalParams params;

    double time_at(std::size_t i) const
    {
        return (static_cast<double>(i) - static_cast<double>(los_index)) * sample_period;
    }
};

// Occupied tone frequencies, symmetric about DC.
std::vector<double> tone_frequencies(const SignalParams &params);

// H(f_k) = sum_n sqrt(P_n) e^{j phi_n} e^{-j 2 pi f_k tau_n}.
std::vector<cdouble> synth_band_response(const Cir &cir, const SignalParams &params);

// Response of a unit tap at delay 0: the mean of e^{j 2 pi f_k t} over the
// occupied tones, sin(pi M s t) / (M sin(pi s t)) for M odd tones spaced s.
double dirichlet_kernel(double t, const SignalParams &params);

// Number of samples and LOS index the synthesis will use for `cir`. The
// window is params.window_s long or longer, extended to hold the last tap
// plus a tail of 20 / bandwidth, but never beyond half the kernel period
// 1 / (2 * tone_spacing) where the response would alias.
struct SampleGrid
{
    std::size_t length = 0;
    std::size_t los_index = 0;
};
SampleGrid sample_grid(const Cir &cir, const SignalParams &params);

// Inverse transform of the occupied-band response onto the sample grid,
// scaled so a unit tap peaks at magnitude 1 at its delay. OpenMP kernel:
// blocks of samples are evaluated in parallel with per-tap phase rotors.
BandlimitedCir bandlimited_cir(const Cir &cir, const SignalParams &params);

// Serial reference of bandlimited_cir: evaluates dirichlet_kernel directly
// for every sample and tap. Kept for tests and the benchmark.
BandlimitedCir bandlimited_cir_reference(const Cir &cir, const SignalParams &params);

// Mean in-band power of a CIR, from pairwise kernel values.
double band_power(const Cir &cir, const SignalParams &params);

// Adds circular white Gaussian noise with per-sample variance
// band_power / 10^(snr_dB / 10). No-op for infinite SNR.
void add_noise(BandlimitedCir &blc, double snr_dB, RandomStream &rng);

} // namespace chansim

#endif
