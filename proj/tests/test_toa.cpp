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
#include <catch2/catch_amalgamated.hpp>

#include "chansim/errors.hpp"
#include "chansim/toa.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace chansim;
using Catch::Approx;
using testing::los_tap;
using testing::tap;

namespace
{

double toa_of(const Cir &cir, const SignalParams &p = {}, const ToaConfig &c = {})
{
    return estimate_toa(bandlimited_cir(cir, p), c).toa;
}

} // namespace

TEST_CASE("toa - calibration")
{
    SignalParams p;
    ToaConfig c;
    const double off = calibrate_offset(p, c);
    CHECK(calibrate_offset(p, c) == off);
    CHECK(std::abs(off) < 1.0 / p.sample_rate_hz);
    CHECK(off < 0.0);

    const auto edge = detect_first_edge(bandlimited_cir(testing::make_cir({los_tap(1.0)}), p), c);
    CHECK(std::abs(edge.inflection_time - off) < 0.1e-9);

    p.oversample = 8;
    CHECK(calibrate_offset(p, c) != off);
}

TEST_CASE("toa - clean taps at known delays")
{
    SignalParams p;
    const double dt = p.sample_period();
    for (double frac : {0.0, 0.13, 0.5, 0.77})
        for (double base : {0.0, 7e-9, 150e-9})
        {
            const double tau = base + frac * dt;
            Cir cir = testing::make_cir({tap(tau, 1.0, 1.1)});
            const auto est = estimate_toa(bandlimited_cir(cir, p), ToaConfig{}, tau);
            CHECK(est.detected);
            CHECK(std::abs(est.error) < 0.2e-9);
        }
}

TEST_CASE("toa - late energy does not move the estimate")
{
    const double clean = toa_of(testing::make_cir({los_tap(1.0)}));
    const double late = toa_of(testing::make_cir({los_tap(1.0), tap(200e-9, 0.5, 1.3)}));
    CHECK(std::abs(late - clean) < 0.2e-9);
}

TEST_CASE("toa - opposite-phase sub-ns reflection distorts the edge")
{
    const double clean = std::abs(toa_of(testing::make_cir({los_tap(1.0)})));
    const double distorted =
        std::abs(toa_of(testing::make_cir({los_tap(1.0), tap(0.3e-9, 1.0, pi, Origin::GroundReflection)})));
    CHECK(distorted > clean);
}

TEST_CASE("toa - time shift equivariance")
{
    SignalParams p;
    RandomStream r(6);
    Cir cir = testing::make_cir({los_tap(1.0)});
    for (int n = 0; n < 6; ++n)
        cir.clusters.push_back(tap(10e-9 + 80e-9 * r.uniform_open_closed(), 0.2 * r.uniform_open_closed(), r.uniform_phase()));
    sort_by_delay(cir.clusters);
    const double t0 = toa_of(cir, p);
    for (double shift : {1.3e-9, 4.0e-9, 25.7e-9})
    {
        Cir moved = cir;
        for (auto &c : moved.clusters)
            c.delay += shift;
        CHECK(std::abs(toa_of(moved, p) - t0 - shift) <= p.sample_period());
    }
}

TEST_CASE("toa - amplitude invariance")
{
    SignalParams p;
    Cir cir = testing::make_cir({los_tap(1.0), tap(3e-9, 0.4, 2.0), tap(30e-9, 0.3, 4.0)});
    auto blc = bandlimited_cir(cir, p);
    const auto a = estimate_toa(blc, ToaConfig{});
    auto scaled = blc;
    for (auto &s : scaled.samples)
        s *= 4.0;
    const auto b = estimate_toa(scaled, ToaConfig{});
    CHECK(a.toa == b.toa);
    CHECK(b.first_path_power_dB - a.first_path_power_dB == Approx(20.0 * std::log10(4.0)).epsilon(1e-12));

    // Other factors change only the rounding.
    for (auto &s : blc.samples)
        s *= 3.7;
    CHECK(std::abs(estimate_toa(blc, ToaConfig{}).toa - a.toa) < 1e-18);
}

TEST_CASE("toa - weak first path before a strong cluster")
{
    // First path 6 dB below a cluster 16 ns later. Cluster sidelobes bias it by a few ns but it stays the anchor.
    SignalParams p;
    for (double phase : {0.0, 0.5 * pi, pi})
    {
        const auto est = estimate_toa(
            bandlimited_cir(testing::make_cir({los_tap(0.5), tap(16e-9, 1.0, phase)}), p), ToaConfig{});
        CHECK(std::abs(est.toa) < 4e-9);
        CHECK(est.first_path_power_dB < est.peak_power_dB);
    }
}

TEST_CASE("toa - no detection on an empty frame")
{
    SignalParams p;
    auto blc = bandlimited_cir(testing::make_cir({los_tap(1.0)}), p);
    for (auto &s : blc.samples)
        s = 0.0;
    CHECK_FALSE(detect_first_edge(blc, ToaConfig{}).detected);
    CHECK_THROWS_AS(estimate_toa(blc, ToaConfig{}), NoDetection);
}
