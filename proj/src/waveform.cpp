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
#include "chansim/waveform.hpp"
#include "chansim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace chansim
{

namespace
{

constexpr std::size_t block_size = 64;

// Below this |pi s t| the rotor ratio loses accuracy; evaluate directly.
constexpr double direct_threshold = 1e-3;

struct Tap
{
    double delay;
    cdouble amplitude;
};

std::vector<Tap> taps_of(const Cir &cir)
{
    std::vector<Tap> taps;
    taps.reserve(cir.clusters.size());
    for (const auto &c : cir.clusters)
        if (c.power > 0.0)
            taps.push_back({c.delay, std::polar(std::sqrt(c.power), c.phase)});
    return taps;
}

BandlimitedCir make_frame(const Cir &cir, const SignalParams &params)
{
    const auto grid = sample_grid(cir, params);
    BandlimitedCir blc;
    blc.params = params;
    blc.sample_period = params.sample_period();
    blc.los_index = grid.los_index;
    blc.time_origin = -static_cast<double>(grid.los_index) * blc.sample_period;
    blc.samples.assign(grid.length, cdouble(0.0, 0.0));
    blc.band_power = band_power(cir, params);
    return blc;
}

} // namespace

std::vector<double> tone_frequencies(const SignalParams &params)
{
    const int m = params.num_subcarriers();
    const double s = params.tone_spacing();
    std::vector<double> f(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        f[static_cast<std::size_t>(k)] = (k - (m - 1) / 2) * s;
    return f;
}

std::vector<cdouble> synth_band_response(const Cir &cir, const SignalParams &params)
{
    const auto f = tone_frequencies(params);
    std::vector<cdouble> h(f.size(), cdouble(0.0, 0.0));
    for (const auto &tap : taps_of(cir))
        for (std::size_t k = 0; k < f.size(); ++k)
            h[k] += tap.amplitude * std::polar(1.0, -2.0 * pi * f[k] * tap.delay);
    return h;
}

double dirichlet_kernel(double t, const SignalParams &params)
{
    const double m = params.num_subcarriers();
    const double x = pi * params.tone_spacing() * t;
    const double den = std::sin(x);
    if (den == 0.0)
        return 1.0; // t = 0 within the kernel's principal period
    return std::sin(m * x) / (m * den);
}

SampleGrid sample_grid(const Cir &cir, const SignalParams &params)
{
    const double dt = params.sample_period();
    double max_delay = 0.0;
    for (const auto &c : cir.clusters)
        max_delay = std::max(max_delay, c.delay);

    SampleGrid g;
    g.los_index = static_cast<std::size_t>(std::llround(params.pre_roll_s / dt));
    const auto nominal = static_cast<std::size_t>(std::llround(params.window_s / dt));
    const auto needed =
        g.los_index + static_cast<std::size_t>(std::ceil((max_delay + 20.0 / params.bandwidth_hz) / dt)) + 1;
    // Clipped to half the kernel period; later taps still add their sidelobes.
    const auto limit = static_cast<std::size_t>(std::floor(0.5 / params.tone_spacing() / dt));
    if (g.los_index + 2 > limit)
        throw ValidationError("pre_roll_s must be shorter than half the kernel period");
    g.length = std::min(std::max(nominal, needed), limit);
    return g;
}

BandlimitedCir bandlimited_cir_reference(const Cir &cir, const SignalParams &params)
{
    BandlimitedCir blc = make_frame(cir, params);
    const auto taps = taps_of(cir);
    for (std::size_t i = 0; i < blc.samples.size(); ++i)
    {
        const double t = blc.time_at(i);
        cdouble acc(0.0, 0.0);
        for (const auto &tap : taps)
            acc += tap.amplitude * dirichlet_kernel(t - tap.delay, params);
        blc.samples[i] = acc;
    }
    return blc;
}

BandlimitedCir bandlimited_cir(const Cir &cir, const SignalParams &params)
{
    BandlimitedCir blc = make_frame(cir, params);
    const auto taps = taps_of(cir);
    const double m = params.num_subcarriers();
    const double w = pi * params.tone_spacing();
    const double step = w * blc.sample_period;
    const cdouble rot_den = std::polar(1.0, step);
    const cdouble rot_num = std::polar(1.0, m * step);

    const std::size_t n = blc.samples.size();
    const auto n_blocks = static_cast<long long>((n + block_size - 1) / block_size);
    cdouble *out = blc.samples.data();

#pragma omp parallel for schedule(static)
    for (long long b = 0; b < n_blocks; ++b)
    {
        const std::size_t first = static_cast<std::size_t>(b) * block_size;
        const std::size_t last = std::min(first + block_size, n);
        for (const auto &tap : taps)
        {
            const double x0 = w * (blc.time_at(first) - tap.delay);
            cdouble den = std::polar(1.0, x0);
            cdouble num = std::polar(1.0, m * x0);
            for (std::size_t i = first; i < last; ++i)
            {
                const double x = w * (blc.time_at(i) - tap.delay);
                double d;
                if (std::abs(x) < direct_threshold)
                    d = dirichlet_kernel(blc.time_at(i) - tap.delay, params);
                else
                    d = num.imag() / (m * den.imag());
                out[i] += tap.amplitude * d;
                den *= rot_den;
                num *= rot_num;
            }
        }
    }
    return blc;
}

double band_power(const Cir &cir, const SignalParams &params)
{
    const auto taps = taps_of(cir);
    double p = 0.0;
    for (std::size_t a = 0; a < taps.size(); ++a)
    {
        p += std::norm(taps[a].amplitude);
        for (std::size_t b = a + 1; b < taps.size(); ++b)
            p += 2.0 * std::real(taps[a].amplitude * std::conj(taps[b].amplitude)) *
                 dirichlet_kernel(taps[a].delay - taps[b].delay, params);
    }
    return p;
}

void add_noise(BandlimitedCir &blc, double snr_dB, RandomStream &rng)
{
    if (std::isinf(snr_dB) && snr_dB > 0.0)
        return;
    const double sigma = std::sqrt(blc.band_power / std::pow(10.0, snr_dB / 10.0) / 2.0);
    for (auto &s : blc.samples)
    {
        const double re = rng.normal();
        const double im = rng.normal();
        s += cdouble(sigma * re, sigma * im);
    }
}

} // namespace chansim
