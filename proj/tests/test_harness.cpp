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

#include "chansim/deterministic.hpp"
#include "chansim/errors.hpp"
#include "chansim/harness.hpp"
#include "test_support.hpp"

#include <cmath>
#include <cstdlib>

using namespace chansim;
using Catch::Approx;

namespace
{

SimConfig small_config(int drops)
{
    SimConfig cfg;
    cfg.num_drops = drops;
    cfg.rng_seed = 2024;
    return cfg;
}

const std::vector<CombinerMode> all_modes{CombinerMode::Baseline_104_20, CombinerMode::BaselineGR_104_60,
                                          CombinerMode::TwoBuilder_104_63, CombinerMode::TwoBuilderGR_104_66};

int run_cli(const std::string &args)
{
    const std::string cmd = std::string(CHANSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("harness - drop seeds")
{
    CHECK(drop_seed(1, CombinerMode::TwoBuilder_104_63, 5) == derive_seed(derive_seed(1, 10463), 5));
    CHECK(drop_seed(1, CombinerMode::Baseline_104_20, 0) == derive_seed(derive_seed(1, 10420), 0));
    CHECK(drop_seed(1, CombinerMode::Baseline_104_20, 0) != drop_seed(1, CombinerMode::BaselineGR_104_60, 0));
}

TEST_CASE("harness - a drop is a function of seed, config and index")
{
    const auto cfg = small_config(1);
    const auto a = simulate_drop(cfg, CombinerMode::TwoBuilderGR_104_66, 17);
    const auto b = simulate_drop(cfg, CombinerMode::TwoBuilderGR_104_66, 17);
    CHECK(a.record.seed == b.record.seed);
    CHECK(a.record.overall_k_dB == b.record.overall_k_dB);
    CHECK(a.record.toa_error_ns == b.record.toa_error_ns);
    CHECK(a.record.rsrp_dB == b.record.rsrp_dB);
    CHECK(a.blc.samples == b.blc.samples);
    CHECK(a.record.config_id == "104.66");
    CHECK(a.record.drop_index == 17);
}

TEST_CASE("harness - serial and parallel drops agree")
{
    const auto cfg = small_config(64);
    for (auto mode : all_modes)
    {
        const auto s = run_drops(cfg, mode, Execution::Serial);
        const auto p = run_drops(cfg, mode, Execution::Parallel);
        REQUIRE(s.size() == p.size());
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            CHECK(s[i].drop_index == i);
            CHECK(s[i].seed == p[i].seed);
            CHECK(s[i].overall_k_dB == p[i].overall_k_dB);
            CHECK(s[i].rsrpp_dB == p[i].rsrpp_dB);
        }
    }
}

TEST_CASE("harness - noisy drops stay reproducible")
{
    auto cfg = small_config(8);
    cfg.signal.snr_dB = 10.0;
    const auto a = run_drops(cfg, CombinerMode::Baseline_104_20, Execution::Serial);
    const auto b = run_drops(cfg, CombinerMode::Baseline_104_20, Execution::Parallel);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].toa_error_ns == b[i].toa_error_ns);
}

TEST_CASE("harness - stats files")
{
    testing::TempDir dir("stats");
    const auto cfg = small_config(200);
    const auto res = run_stats(cfg, {CombinerMode::Baseline_104_20, CombinerMode::TwoBuilder_104_63}, dir.path());
    REQUIRE(res.size() == 2);
    CHECK(res[0].drops == 200);

    const auto kec_rows = testing::csv_rows(dir.path() / "stats_104_20_kec.csv");
    REQUIRE_FALSE(kec_rows.empty());
    double prev = 0.0;
    for (const auto &r : kec_rows)
    {
        const double f = std::stod(r[1]);
        CHECK(f >= prev);
        prev = f;
    }
    CHECK(kec_rows.back()[1] == "1");
    if (res[0].noec_fraction > 0.0)
        CHECK(kec_rows.back()[0] == "inf");

    const auto text = testing::slurp(dir.path() / "stats_104_63_overall_k.csv");
    CHECK(text.rfind("# chansim-csv schema=1 metric=overall_k_dB config=104.63 seed=2024 drops=200", 0) == 0);

    const auto summary = testing::csv_rows(dir.path() / "stats_summary.csv");
    REQUIRE(summary.size() == 2);
    CHECK(summary[0][0] == "104.20");
    CHECK(std::stod(summary[0][2]) == Approx(res[0].noec_fraction));
    CHECK(testing::csv_rows(dir.path() / "stats_104_20_records.csv").size() == 200);
}

TEST_CASE("harness - single-drop stats")
{
    testing::TempDir dir("single");
    const auto res = run_stats(small_config(1), {CombinerMode::Baseline_104_20}, dir.path());
    const auto rows = testing::csv_rows(dir.path() / "stats_104_20_overall_k.csv");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][1] == "1");
    CHECK(std::stod(rows[0][0]) == Approx(res[0].records[0].overall_k_dB).epsilon(1e-9));
}

TEST_CASE("harness - stats output is byte identical across runs and execution modes")
{
    testing::TempDir a("det_a"), b("det_b");
    const auto cfg = small_config(100);
    run_stats(cfg, all_modes, a.path(), Execution::Parallel);
    run_stats(cfg, all_modes, b.path(), Execution::Serial);
    for (const auto &entry : std::filesystem::directory_iterator(a.path()))
        CHECK(testing::slurp(entry.path()) == testing::slurp(b.path() / entry.path().filename()));
}

TEST_CASE("harness - K_EC bins")
{
    const auto bins = make_kec_bins({0.0, 5.0, 10.0, 15.0});
    REQUIRE(bins.size() == 6);
    CHECK(std::isinf(bins[0].lo_dB));
    CHECK(bins[0].hi_dB == 0.0);
    CHECK(bins[4].lo_dB == 15.0);
    CHECK(bins[5].no_ec);
    CHECK_THROWS_AS(make_kec_bins({0.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(make_kec_bins({5.0, 0.0}), ValidationError);

    auto b = bins;
    RunRecord r;
    r.detected = true;
    r.toa_error_ns = -2.0;
    r.kec = {false, 5.0};
    assign_to_bins(b, r);
    CHECK(b[2].abs_errors_ns == std::vector<double>{2.0});
    r.kec = {true, std::numeric_limits<double>::infinity()};
    assign_to_bins(b, r);
    CHECK(b[5].abs_errors_ns.size() == 1);
    r.detected = false;
    assign_to_bins(b, r);
    std::size_t total = 0;
    for (const auto &bin : b)
        total += bin.abs_errors_ns.size();
    CHECK(total == 2);
}

TEST_CASE("harness - ToA CDF partition")
{
    testing::TempDir dir("toa");
    const auto cfg = small_config(150);
    const auto res = run_toa_cdf(cfg, all_modes, cfg.kec_bins, dir.path());
    CHECK(res.total_drops == 600);
    std::size_t binned = 0;
    for (const auto &b : res.bins)
    {
        binned += b.abs_errors_ns.size();
        CHECK(std::filesystem::exists(dir.path() / ("toa_cdf_" + b.label + ".csv")));
    }
    CHECK(binned + res.no_detection == res.total_drops);
    CHECK(res.records.size() == 600);

    const auto summary = testing::csv_rows(dir.path() / "toa_cdf_summary.csv");
    REQUIRE(summary.size() == 7);
    std::size_t counted = 0;
    for (std::size_t i = 0; i < 6; ++i)
        counted += std::stoul(summary[i][3]);
    CHECK(counted == binned);

    const auto records = testing::csv_rows(dir.path() / "toa_records.csv");
    REQUIRE(records.size() == 600);
    CHECK(records[0][1] == "104.20");
    CHECK(records[599][1] == "104.66");
}

TEST_CASE("harness - empty bins are reported, not fatal")
{
    testing::TempDir dir("empty");
    const auto cfg = small_config(20);
    const auto res = run_toa_cdf(cfg, {CombinerMode::Baseline_104_20}, {-200.0, -100.0}, dir.path());
    CHECK(res.bins[0].abs_errors_ns.empty());
    const auto rows = testing::csv_rows(dir.path() / "toa_cdf_summary.csv");
    CHECK(rows[0][4] == "nan");
    CHECK(testing::slurp(dir.path() / "toa_cdf_bin0.csv").find("empty_bin") != std::string::npos);
}

TEST_CASE("harness - height sweep")
{
    testing::TempDir dir("sweep");
    auto cfg = small_config(1);
    cfg.sweep = {0.7, 3.3, 27};

    const auto rows = run_height_sweep(cfg, CombinerMode::BaselineGR_104_60, dir.path());
    REQUIRE(rows.size() == 27);
    CHECK(rows.front().height_m == 0.7);
    CHECK(rows.back().height_m == Approx(3.3));
    for (const auto &r : rows)
        CHECK(r.sf_dB == rows.front().sf_dB);

    GeometryLink low = cfg.link, high = cfg.link;
    low.ue.z = 0.7;
    high.ue.z = 3.3;
    CHECK(rows.front().gr_excess_delay == ground_reflection_path(low, 3.0).excess_delay);
    CHECK(rows.back().gr_excess_delay == ground_reflection_path(high, 3.0).excess_delay);
    CHECK(testing::csv_rows(dir.path() / "height_sweep_104_60.csv").size() == 27);

    cfg.sweep = {1.5, 1.5, 1};
    CHECK(run_height_sweep(cfg, CombinerMode::Baseline_104_20, dir.path()).size() == 1);
    CHECK(testing::csv_rows(dir.path() / "height_sweep_104_20.csv").size() == 1);
}

TEST_CASE("harness - dumped CIR")
{
    testing::TempDir dir("dump");
    const auto cfg = small_config(1);
    const auto res = dump_cir(cfg, CombinerMode::TwoBuilderGR_104_66, 3, dir.path());
    const auto wb = testing::csv_rows(dir.path() / "cir_104_66_drop3_wideband.csv");
    const auto bl = testing::csv_rows(dir.path() / "cir_104_66_drop3_bandlimited.csv");
    CHECK(wb.size() == res.cir.clusters.size());
    CHECK(bl.size() == res.blc.samples.size());
    CHECK(wb[0][3] == "LOS");
    bool has_ec = false, has_gr = false;
    for (const auto &r : wb)
    {
        has_ec |= r[4] == "EC";
        has_gr |= r[3] == "ground_reflection";
    }
    CHECK(has_ec);
    CHECK(has_gr);
    CHECK(simulate_drop(cfg, CombinerMode::TwoBuilderGR_104_66, 3).record.rsrp_dB == res.record.rsrp_dB);
}

TEST_CASE("harness - first lobe against the LOS magnitude")
{
    // Strong LOS so statistical clusters barely touch the first lobe.
    auto cfg = small_config(1);
    cfg.scenario.mu_K_dB = 30.0;
    cfg.scenario.sigma_K_dB = 0.0;

    auto relative_phase = [&](double h) {
        GeometryLink l = cfg.link;
        l.ue.z = h;
        return std::cos(ground_reflection_path(l, 3.0).phase - los_path(l).phase);
    };
    double constructive = 0, destructive = 0, best_c = -2, best_d = 2;
    for (double h = 0.7; h <= 3.3; h += 0.001)
    {
        const double c = relative_phase(h);
        if (c > best_c)
            best_c = c, constructive = h;
        if (c < best_d)
            best_d = c, destructive = h;
    }

    auto lobe_over_los = [&](double h) {
        SimConfig c = cfg;
        c.link.ue.z = h;
        const auto d = simulate_drop(c, CombinerMode::BaselineGR_104_60, 0);
        return std::abs(d.blc.samples[d.toa.first_peak_index]) / std::sqrt(d.cir.los()->power);
    };
    CHECK(lobe_over_los(constructive) > 1.0);
    CHECK(lobe_over_los(destructive) < 1.0);

    // Single tap: the trace is the kernel itself.
    SimConfig lone = cfg;
    lone.scenario.num_clusters = 1;
    const auto d = simulate_drop(lone, CombinerMode::Baseline_104_20, 0);
    REQUIRE(d.cir.clusters.size() == 1);
    const double a = std::sqrt(d.cir.clusters[0].power);
    for (std::size_t i = 0; i < d.blc.samples.size(); i += 37)
        CHECK(std::abs(d.blc.samples[i]) == Approx(a * std::abs(dirichlet_kernel(d.blc.time_at(i), lone.signal))).margin(1e-9 * a));
}

TEST_CASE("harness - plot scripts")
{
    testing::TempDir dir("plots");
    write_plot_scripts(dir.path());
    for (const char *f : {"plot_stats.gp", "plot_toa_cdf.gp", "plot_height_sweep.gp", "plot_cir.gp"})
        CHECK(std::filesystem::file_size(dir.path() / f) > 0);
}

TEST_CASE("harness - command line")
{
    testing::TempDir a("cli_a"), b("cli_b");
    const std::string common = " --drops 40 --seed 9 --configs 104.20,104.66";
    CHECK(run_cli("stats" + common + " --out-dir " + a.path().string()) == 0);
    CHECK(run_cli("stats" + common + " --serial --out-dir " + b.path().string()) == 0);
    CHECK(testing::slurp(a.path() / "stats_104_66_kec.csv") == testing::slurp(b.path() / "stats_104_66_kec.csv"));
    CHECK(testing::slurp(a.path() / "stats_summary.csv") == testing::slurp(b.path() / "stats_summary.csv"));

    CHECK(run_cli("toa-cdf" + common + " --bins -5,5 --out-dir " + a.path().string()) == 0);
    CHECK(testing::csv_rows(a.path() / "toa_cdf_summary.csv").size() == 5);
    CHECK(run_cli("height-sweep --steps 5 --configs 104.60 --out-dir " + a.path().string()) == 0);
    CHECK(testing::csv_rows(a.path() / "height_sweep_104_60.csv").size() == 5);
    CHECK(run_cli("dump-cir --drop-index 2 --configs 104.63 --out-dir " + a.path().string()) == 0);
    CHECK(std::filesystem::exists(a.path() / "cir_104_63_drop2_bandlimited.csv"));
    CHECK(run_cli("calibrate") == 0);
    CHECK(run_cli("plot-scripts --out-dir " + a.path().string()) == 0);

    CHECK(run_cli("stats --drops 5 --set scenario.r_tau=0.5 --out-dir " + a.path().string()) == 1);
    CHECK(run_cli("stats --drops 5 --configs 104.99 --out-dir " + a.path().string()) == 1);
    CHECK(run_cli("stats --config /nonexistent.cfg") == 2);
    CHECK(run_cli("stats --drops 5 --configs 104.20 --out-dir /dev/null/sub") == 2);
    CHECK(run_cli("no-such-command") == 1);
}
