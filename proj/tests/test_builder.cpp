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

#include "chansim/builder.hpp"
#include "chansim/errors.hpp"
#include "chansim/metrics.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>

using namespace chansim;
using Catch::Approx;

namespace
{

LspState fixed_lsp(double ds, double k_dB)
{
    LspState l;
    l.ds = ds;
    l.k_dB = k_dB;
    return l;
}

std::vector<ClusterDraw> draws_of(std::initializer_list<double> xs)
{
    std::vector<ClusterDraw> d;
    for (double x : xs)
        d.push_back({x, 0.0});
    return d;
}

} // namespace

TEST_CASE("builder - delay examples")
{
    ScenarioParams s;

    SECTION("x = 1 gives zero delay")
    {
        const auto d = raw_cluster_delays(s, fixed_lsp(50e-9, 0), draws_of({1.0, 1.0, 1.0}));
        for (double t : d)
            CHECK(t == 0.0);
    }
    SECTION("r_tau = 2, DS = 20 ns, x = 1/e")
    {
        s.r_tau = 2.0;
        const auto d = raw_cluster_delays(s, fixed_lsp(20e-9, 0), draws_of({std::exp(-1.0)}));
        CHECK(d[0] == Approx(40e-9).epsilon(1e-14));
    }
    SECTION("shift and sort")
    {
        s.r_tau = 1.0;
        const auto d = draw_cluster_delays(s, fixed_lsp(10e-9, 0), draws_of({std::exp(-2.0), std::exp(-1.0)}));
        REQUIRE(d.size() == 2);
        CHECK(d[0] == 0.0);
        CHECK(d[1] == Approx(10e-9).epsilon(1e-14));
    }
    SECTION("zero draw is degenerate")
    {
        CHECK_THROWS_AS(raw_cluster_delays(s, fixed_lsp(10e-9, 0), draws_of({0.5, 0.0})), DegenerateDraw);
    }
}

TEST_CASE("builder - power examples")
{
    ScenarioParams s;
    s.r_tau = 2.0;
    const auto lsp = fixed_lsp(20e-9, 0);

    const std::vector<ClusterDraw> zero{{1.0, 0.0}};
    CHECK(draw_cluster_powers(s, lsp, std::vector<double>{0.0}, zero)[0] == 1.0);

    const std::vector<ClusterDraw> one{{0.5, 0.0}};
    CHECK(draw_cluster_powers(s, lsp, std::vector<double>{40e-9}, one)[0] ==
          Approx(0.36787944117144233).epsilon(1e-14));

    s.r_tau = 1.0;
    const std::vector<ClusterDraw> shadowed{{0.5, 3.0}};
    CHECK(draw_cluster_powers(s, lsp, std::vector<double>{123e-9}, shadowed)[0] ==
          Approx(std::pow(10.0, 0.3)).epsilon(1e-14));

    CHECK_THROWS_AS(draw_cluster_powers(s, lsp, std::vector<double>{1e-9, 2e-9}, shadowed), ValidationError);
}

TEST_CASE("builder - powers decrease with raw delay")
{
    ScenarioParams s;
    const auto lsp = fixed_lsp(30e-9, 0);
    RandomStream r(8);
    std::vector<ClusterDraw> d(200);
    for (auto &c : d)
        c.x = r.uniform_open_closed();
    const auto tau = raw_cluster_delays(s, lsp, d);
    const auto p = draw_cluster_powers(s, lsp, tau, d);
    for (std::size_t a = 0; a < d.size(); ++a)
        for (std::size_t b = 0; b < d.size(); ++b)
            if (tau[a] > tau[b])
                CHECK(p[a] < p[b]);
}

TEST_CASE("builder - matches brute-force cluster law")
{
    ScenarioParams s;
    RandomStream r(2);
    for (int trial = 0; trial < 200; ++trial)
    {
        s.r_tau = 1.2 + 3.0 * r.uniform_open_closed();
        const auto lsp = fixed_lsp(1e-9 + 100e-9 * r.uniform_open_closed(), 0);
        std::vector<double> x, z;
        std::vector<ClusterDraw> d;
        for (int n = 0; n < 20; ++n)
        {
            x.push_back(r.uniform_open_closed());
            z.push_back(4.0 * r.normal());
            d.push_back({x.back(), z.back()});
        }
        const auto brute = testing::brute_clusters(s.r_tau, lsp.ds, x, z);
        const auto tau = raw_cluster_delays(s, lsp, d);
        const auto p = draw_cluster_powers(s, lsp, tau, d);
        for (std::size_t n = 0; n < d.size(); ++n)
        {
            CHECK(tau[n] == Approx(brute[n].raw_delay).epsilon(1e-12));
            CHECK(p[n] == Approx(brute[n].power).epsilon(1e-12));
        }
    }
}

TEST_CASE("builder - pre-shift delays are exponential")
{
    ScenarioParams s;
    s.r_tau = 3.0;
    const auto lsp = fixed_lsp(20e-9, 0);
    RandomStream r(123);
    std::vector<ClusterDraw> d(10000);
    for (auto &c : d)
        c.x = r.uniform_open_closed();
    const auto tau = raw_cluster_delays(s, lsp, d);
    const double mean = 60e-9;
    const double stat = testing::ks_one_sample(tau, [&](double t) { return 1.0 - std::exp(-t / mean); });
    CHECK(testing::ks_p_value(stat, 10000.0) > 0.01);
}

TEST_CASE("builder - LOS delay scaling")
{
    CHECK(los_delay_scaling(0.0) == Approx(0.7705));
    CHECK(los_delay_scaling(7.0) == Approx(0.483031).epsilon(1e-12));
    CHECK(los_delay_scaling(-50.0) == los_delay_scaling(-30.0));
    // The cubic turns upward near 25.5 dB.
    double prev = los_delay_scaling(-30.0);
    for (double k = -29.0; k <= 25.0; k += 1.0)
    {
        const double c = los_delay_scaling(k);
        CHECK(c < prev);
        CHECK(c > 0.0);
        prev = c;
    }
}

TEST_CASE("builder - apply_k_and_normalize examples")
{
    using testing::tap;

    SECTION("pure NLOS")
    {
        const auto cir = apply_k_and_normalize({tap(0, 2), tap(1e-9, 1), tap(2e-9, 1)}, fixed_lsp(1e-8, no_los_k_dB), 0.0);
        REQUIRE(cir.clusters.size() == 3);
        CHECK(cir.los() == nullptr);
        CHECK(cir.clusters[0].power == Approx(0.5));
        CHECK(cir.clusters[1].power == Approx(0.25));
        CHECK(cir.clusters[2].power == Approx(0.25));
    }
    SECTION("K = 0 dB")
    {
        const auto cir = apply_k_and_normalize({tap(5e-9, 3.0)}, fixed_lsp(1e-8, 0.0), 0.0);
        REQUIRE(cir.los() != nullptr);
        CHECK(cir.los()->power == Approx(0.5));
        CHECK(cir.clusters[1].power == Approx(0.5));
    }
    SECTION("K = 10 dB, target -3 dB")
    {
        // total = 10^-0.3; LOS = total * 10 / 11; NLOS share total / 11 as 0.3 : 0.7.
        const auto cir = apply_k_and_normalize({tap(1e-9, 0.3), tap(2e-9, 0.7)}, fixed_lsp(1e-8, 10.0), -3.0);
        REQUIRE(cir.clusters.size() == 3);
        CHECK(cir.clusters[0].origin == Origin::Los);
        CHECK(cir.clusters[0].power == Approx(0.45562475784297474).epsilon(1e-12));
        CHECK(cir.clusters[1].power == Approx(0.013668742735289242).epsilon(1e-12));
        CHECK(cir.clusters[2].power == Approx(0.03189373304900823).epsilon(1e-12));
    }
    SECTION("errors")
    {
        CHECK_THROWS_AS(apply_k_and_normalize({}, fixed_lsp(1e-8, 0), 0.0), AllZeroPower);
        CHECK_THROWS_AS(apply_k_and_normalize({tap(0, 0.0)}, fixed_lsp(1e-8, 0), 0.0), AllZeroPower);
        CHECK_THROWS_AS(apply_k_and_normalize({tap(0, -1.0)}, fixed_lsp(1e-8, 0), 0.0), ValidationError);
    }
}

TEST_CASE("builder - single-cluster collapse")
{
    ScenarioParams s;
    s.num_clusters = 1;
    RandomStream r(4);
    const auto cir = build_statistical_cir(s, fixed_lsp(30e-9, no_los_k_dB), r, BuilderTag::None, -7.0);
    REQUIRE(cir.clusters.size() == 1);
    CHECK(cir.clusters[0].delay == 0.0);
    CHECK(cir.clusters[0].power == Approx(std::pow(10.0, -0.7)).epsilon(1e-12));
}

TEST_CASE("builder - statistical CIR invariants")
{
    ScenarioParams s;
    for (std::uint64_t seed = 0; seed < 300; ++seed)
    {
        RandomStream r(seed);
        const auto lsp = draw_lsps(s, r);
        const double target = -80.0 + 10.0 * r.normal();
        const auto cir = build_statistical_cir(s, lsp, r, BuilderTag::LC, target);

        CHECK(cir.clusters.size() == static_cast<std::size_t>(s.num_clusters));
        CHECK(cir.total_power() == Approx(std::pow(10.0, target / 10.0)).epsilon(1e-12));
        REQUIRE(cir.los() != nullptr);
        CHECK(cir.los()->delay == 0.0);
        CHECK(overall_k(cir) == Approx(lsp.k_dB).margin(1e-10));
        CHECK(std::is_sorted(cir.clusters.begin(), cir.clusters.end(),
                             [](const Cluster &a, const Cluster &b) { return a.delay < b.delay; }));
        for (const auto &c : cir.clusters)
        {
            CHECK(c.delay >= 0.0);
            if (c.origin == Origin::Statistical)
                CHECK(c.tag == BuilderTag::LC);
        }
        CHECK(cir.draws.size() == static_cast<std::size_t>(s.num_clusters));
    }
}

TEST_CASE("builder - NLOS delays stretched by the LOS scaling")
{
    ScenarioParams s;
    const auto lsp = fixed_lsp(40e-9, 9.0);
    RandomStream a(17), b(17);
    const auto scaled = build_statistical_cir(s, lsp, a);
    s.los_delay_scaling = false;
    const auto plain = build_statistical_cir(s, lsp, b);
    REQUIRE(scaled.clusters.size() == plain.clusters.size());
    for (std::size_t i = 0; i < scaled.clusters.size(); ++i)
        CHECK(scaled.clusters[i].delay == Approx(plain.clusters[i].delay / los_delay_scaling(9.0)).epsilon(1e-12));
}

TEST_CASE("builder - LOS-referenced builds keep raw delays")
{
    ScenarioParams s;
    s.num_clusters = 4;
    const auto lsp = fixed_lsp(5e-9, no_los_k_dB);
    RandomStream a(5), b(5);
    const auto cir = build_statistical_cir(s, lsp, a, BuilderTag::EC, 0.0, DelayReference::Los);
    const auto raw = raw_cluster_delays(s, lsp, cir.draws);
    auto sorted = raw;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(cir.clusters.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(cir.clusters[i].delay == sorted[i]);
    CHECK(cir.clusters[0].delay > 0.0);
}

TEST_CASE("builder - determinism")
{
    ScenarioParams s;
    RandomStream a(99), b(99);
    const auto la = draw_lsps(s, a), lb = draw_lsps(s, b);
    const auto ca = build_statistical_cir(s, la, a), cb = build_statistical_cir(s, lb, b);
    REQUIRE(ca.clusters.size() == cb.clusters.size());
    for (std::size_t i = 0; i < ca.clusters.size(); ++i)
    {
        CHECK(ca.clusters[i].delay == cb.clusters[i].delay);
        CHECK(ca.clusters[i].power == cb.clusters[i].power);
        CHECK(ca.clusters[i].phase == cb.clusters[i].phase);
    }
}

TEST_CASE("builder - earliest NLOS cluster beyond 20 ns in about a quarter of drops")
{
    ScenarioParams s;
    int beyond = 0;
    const int drops = 100000;
    for (int i = 0; i < drops; ++i)
    {
        RandomStream r(derive_seed(31, static_cast<std::uint64_t>(i)));
        const auto lsp = draw_lsps(s, r);
        const auto cir = build_statistical_cir(s, lsp, r);
        double first = 1.0;
        for (const auto &c : cir.clusters)
            if (c.origin == Origin::Statistical)
                first = std::min(first, c.delay);
        beyond += first > 20e-9 ? 1 : 0;
    }
    const double frac = static_cast<double>(beyond) / drops;
    CHECK(frac >= 0.15);
    CHECK(frac <= 0.35);
}
