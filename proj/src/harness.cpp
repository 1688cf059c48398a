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
#include "chansim/harness.hpp"
#include "chansim/combiner.hpp"
#include "chansim/csv.hpp"
#include "chansim/errors.hpp"
#include "chansim/largescale.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>

namespace chansim
{

namespace
{

std::uint64_t mode_code(CombinerMode mode)
{
    switch (mode)
    {
    case CombinerMode::Baseline_104_20:
        return 10420;
    case CombinerMode::BaselineGR_104_60:
        return 10460;
    case CombinerMode::TwoBuilder_104_63:
        return 10463;
    case CombinerMode::TwoBuilderGR_104_66:
        return 10466;
    }
    return 0;
}

std::string file_id(CombinerMode mode)
{
    std::string s(to_string(mode));
    std::replace(s.begin(), s.end(), '.', '_');
    return s;
}

std::string kec_cell(const KecValue &k) { return k.no_ec ? "inf" : csv::num(k.value_dB); }

std::string describe(const SimConfig &cfg, const std::string &metric, const std::string &config_id,
                     std::size_t drops)
{
    return "metric=" + metric + " config=" + config_id + " seed=" + std::to_string(cfg.rng_seed) +
           " drops=" + std::to_string(drops);
}

const std::vector<std::string> record_columns = {"drop_index", "config_id", "kec_dB",  "overall_k_dB",
                                                 "toa_error_ns", "rsrp_dB",  "rsrpp_dB", "seed"};

std::vector<std::string> record_cells(const RunRecord &r)
{
    return {std::to_string(r.drop_index),
            r.config_id,
            kec_cell(r.kec),
            csv::num(r.overall_k_dB),
            r.detected ? csv::num(r.toa_error_ns) : "nodetect",
            csv::num(r.rsrp_dB),
            csv::num(r.rsrpp_dB),
            std::to_string(r.seed)};
}

// value,cum_fraction rows over the sorted finite samples; +inf samples form
// a terminal "inf,1" row so the NoEC mass stays visible.
csv::Table cdf_table(const std::string &description, std::vector<double> samples)
{
    csv::Table t(description, {"value", "cum_fraction"});
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    std::size_t i = 0;
    while (i < samples.size() && std::isfinite(samples[i]))
    {
        std::size_t j = i;
        while (j < samples.size() && samples[j] == samples[i])
            ++j;
        t.row({csv::num(samples[i]), csv::num(static_cast<double>(j) / n)});
        i = j;
    }
    if (i < samples.size())
        t.row({"inf", csv::num(1.0)});
    return t;
}

template <class F>
void for_each_drop(std::size_t count, Execution exec, F &&body)
{
    const auto n = static_cast<long long>(count);
    if (exec == Execution::Serial)
    {
        for (long long i = 0; i < n; ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i)
    {
        try
        {
            body(static_cast<std::size_t>(i));
        }
        catch (...)
        {
#pragma omp critical(chansim_drop_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

void fill_band_record(RunRecord &r, const Cir &cir, const BandlimitedCir &blc, const ToaEstimate &toa,
                      double upsilon)
{
    r.kec = kec(cir, upsilon);
    r.overall_k_dB = overall_k(cir);
    r.rsrp_dB = 10.0 * std::log10(blc.band_power);
    r.detected = toa.detected;
    if (toa.detected)
    {
        r.toa_error_ns = toa.error * 1e9;
        r.rsrpp_dB = band_powers(blc, toa).rsrpp_dB;
    }
    else
    {
        r.toa_error_ns = std::numeric_limits<double>::quiet_NaN();
        r.rsrpp_dB = -std::numeric_limits<double>::infinity();
    }
}

ToaEstimate try_estimate(const BandlimitedCir &blc, const ToaConfig &cfg)
{
    try
    {
        return estimate_toa(blc, cfg);
    }
    catch (const NoDetection &)
    {
        return ToaEstimate{};
    }
}

} // namespace

std::uint64_t drop_seed(std::uint64_t seed, CombinerMode mode, std::uint64_t drop_index)
{
    return derive_seed(derive_seed(seed, mode_code(mode)), drop_index);
}

DropResult simulate_drop(const SimConfig &cfg, CombinerMode mode, std::uint64_t drop_index)
{
    const std::uint64_t seed = drop_seed(cfg.rng_seed, mode, drop_index);
    RandomStream rng(seed);

    DropResult res;
    res.cir = realize_configuration(mode, cfg.scenario, cfg.combiner, cfg.link, rng);
    res.blc = bandlimited_cir(res.cir, cfg.signal);
    if (!std::isinf(cfg.signal.snr_dB))
    {
        RandomStream noise = rng.substream(2);
        add_noise(res.blc, cfg.signal.snr_dB, noise);
    }
    res.toa = try_estimate(res.blc, cfg.toa);

    res.record.drop_index = drop_index;
    res.record.config_id = std::string(to_string(mode));
    res.record.seed = seed;
    res.record.ue_height_m = cfg.link.ue.z;
    fill_band_record(res.record, res.cir, res.blc, res.toa, cfg.upsilon);
    return res;
}

std::vector<RunRecord> run_drops(const SimConfig &cfg, CombinerMode mode, Execution exec)
{
    // Warm the calibration cache outside the parallel region.
    calibrate_offset(cfg.signal, cfg.toa);
    std::vector<RunRecord> records(static_cast<std::size_t>(cfg.num_drops));
    for_each_drop(records.size(), exec,
                  [&](std::size_t i) { records[i] = simulate_drop(cfg, mode, i).record; });
    return records;
}

std::vector<StatsSummary> run_stats(const SimConfig &cfg, const std::vector<CombinerMode> &modes,
                                    const std::filesystem::path &out_dir, Execution exec)
{
    std::vector<StatsSummary> out;
    csv::Table summary(describe(cfg, "stats_summary", "all", static_cast<std::size_t>(cfg.num_drops)),
                       {"config_id", "drops", "noec_fraction", "k_below_0dB_fraction", "median_overall_k_dB"});
    for (const auto mode : modes)
    {
        StatsSummary s;
        s.config_id = std::string(to_string(mode));
        s.records = run_drops(cfg, mode, exec);
        s.drops = s.records.size();

        std::vector<double> k, kec_values;
        std::size_t no_ec = 0, k_neg = 0;
        csv::Table records(describe(cfg, "records", s.config_id, s.drops), record_columns);
        for (const auto &r : s.records)
        {
            k.push_back(r.overall_k_dB);
            kec_values.push_back(r.kec.no_ec ? std::numeric_limits<double>::infinity() : r.kec.value_dB);
            no_ec += r.kec.no_ec ? 1 : 0;
            k_neg += r.overall_k_dB < 0.0 ? 1 : 0;
            records.row(record_cells(r));
        }
        s.noec_fraction = static_cast<double>(no_ec) / static_cast<double>(s.drops);
        s.k_below_0_fraction = static_cast<double>(k_neg) / static_cast<double>(s.drops);

        const auto id = file_id(mode);
        cdf_table(describe(cfg, "overall_k_dB", s.config_id, s.drops), k).save(out_dir / ("stats_" + id + "_overall_k.csv"));
        cdf_table(describe(cfg, "kec_dB upsilon_ns=" + csv::num(cfg.upsilon * 1e9), s.config_id, s.drops), kec_values)
            .save(out_dir / ("stats_" + id + "_kec.csv"));
        records.save(out_dir / ("stats_" + id + "_records.csv"));

        summary.row({s.config_id, std::to_string(s.drops), csv::num(s.noec_fraction), csv::num(s.k_below_0_fraction),
                     csv::num(quantile(k, 0.5))});
        out.push_back(std::move(s));
    }
    summary.save(out_dir / "stats_summary.csv");
    return out;
}

std::vector<KecBin> make_kec_bins(const std::vector<double> &edges)
{
    if (!std::is_sorted(edges.begin(), edges.end()) ||
        std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw ValidationError("kec_bins must be strictly increasing");

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<KecBin> bins;
    double lo = -inf;
    for (std::size_t i = 0; i <= edges.size(); ++i)
    {
        KecBin b;
        b.lo_dB = lo;
        b.hi_dB = i < edges.size() ? edges[i] : inf;
        b.label = "bin" + std::to_string(i);
        bins.push_back(b);
        lo = b.hi_dB;
    }
    KecBin noec;
    noec.label = "noec";
    noec.no_ec = true;
    noec.lo_dB = inf;
    noec.hi_dB = inf;
    bins.push_back(noec);
    return bins;
}

void assign_to_bins(std::vector<KecBin> &bins, const RunRecord &record)
{
    if (!record.detected)
        return;
    const double err = std::abs(record.toa_error_ns);
    for (auto &b : bins)
    {
        if (record.kec.no_ec ? b.no_ec
                             : (!b.no_ec && record.kec.value_dB >= b.lo_dB && record.kec.value_dB < b.hi_dB))
        {
            b.abs_errors_ns.push_back(err);
            return;
        }
    }
    // +inf K_EC with a non-empty window (all early clusters at zero power).
    for (auto &b : bins)
        if (!b.no_ec && std::isinf(b.hi_dB))
        {
            b.abs_errors_ns.push_back(err);
            return;
        }
}

ToaCdfResult run_toa_cdf(const SimConfig &cfg, const std::vector<CombinerMode> &modes,
                         const std::vector<double> &kec_edges, const std::filesystem::path &out_dir, Execution exec)
{
    ToaCdfResult res;
    res.bins = make_kec_bins(kec_edges);

    csv::Table records(describe(cfg, "toa_records", "pooled", 0), record_columns);
    for (const auto mode : modes)
    {
        for (auto &r : run_drops(cfg, mode, exec))
        {
            records.row(record_cells(r));
            ++res.total_drops;
            if (!r.detected)
                ++res.no_detection;
            assign_to_bins(res.bins, r);
            res.records.push_back(std::move(r));
        }
    }

    std::string pooled;
    for (const auto mode : modes)
        pooled += (pooled.empty() ? "" : "+") + std::string(to_string(mode));

    csv::Table summary(describe(cfg, "toa_cdf_summary upsilon_ns=" + csv::num(cfg.upsilon * 1e9), pooled, res.total_drops),
                       {"bin", "kec_lo_dB", "kec_hi_dB", "count", "median_abs_error_ns", "p90_abs_error_ns"});
    for (const auto &b : res.bins)
    {
        const std::string range = b.no_ec ? "noec" : "[" + csv::num(b.lo_dB) + "," + csv::num(b.hi_dB) + ")";
        if (!b.abs_errors_ns.empty())
            cdf_table(describe(cfg, "abs_toa_error_ns kec=" + range, pooled, b.abs_errors_ns.size()), b.abs_errors_ns)
                .save(out_dir / ("toa_cdf_" + b.label + ".csv"));
        else
            csv::Table(describe(cfg, "abs_toa_error_ns kec=" + range + " empty_bin", pooled, 0), {"value", "cum_fraction"})
                .save(out_dir / ("toa_cdf_" + b.label + ".csv"));
        const bool empty = b.abs_errors_ns.empty();
        summary.row({b.label, b.no_ec ? "noec" : csv::num(b.lo_dB), b.no_ec ? "noec" : csv::num(b.hi_dB),
                     std::to_string(b.abs_errors_ns.size()), empty ? "nan" : csv::num(quantile(b.abs_errors_ns, 0.5)),
                     empty ? "nan" : csv::num(quantile(b.abs_errors_ns, 0.9))});
    }
    summary.row({"nodetect", "", "", std::to_string(res.no_detection), "", ""});
    summary.save(out_dir / "toa_cdf_summary.csv");
    records.save(out_dir / "toa_records.csv");
    return res;
}

std::vector<SweepRow> run_height_sweep(const SimConfig &cfg, CombinerMode mode, const std::filesystem::path &out_dir)
{
    const auto &sw = cfg.sweep;
    std::vector<double> heights(static_cast<std::size_t>(sw.steps));
    for (int i = 0; i < sw.steps; ++i)
        heights[static_cast<std::size_t>(i)] =
            sw.steps == 1 ? sw.h_min : sw.h_min + (sw.h_max - sw.h_min) * i / (sw.steps - 1);

    std::vector<Vec3> positions;
    for (double h : heights)
        positions.push_back({cfg.link.ue.x, cfg.link.ue.y, h});

    const std::uint64_t base = derive_seed(cfg.rng_seed, mode_code(mode));
    const auto lsps = lsp_field_at(cfg.scenario, positions, derive_seed(base, 0x5357454550ULL));

    // One frozen statistical realization at the first sweep position.
    RandomStream rng(derive_seed(base, 0));
    GeometryLink first = cfg.link;
    first.ue = positions.front();
    const Cir statistical = realize_statistical(mode, cfg.scenario, cfg.combiner, lsps.front(),
                                                link_power_target_dB(first, cfg.scenario, lsps.front()), rng);
    calibrate_offset(cfg.signal, cfg.toa);

    std::vector<SweepRow> rows(heights.size());
    for (std::size_t i = 0; i < heights.size(); ++i)
    {
        GeometryLink link = cfg.link;
        link.ue = positions[i];
        Cir cir = statistical;
        cir.lsp = lsps[i];
        cir = apply_geometry(std::move(cir), mode, cfg.combiner, link, cfg.scenario);
        const auto blc = bandlimited_cir(cir, cfg.signal);
        const auto toa = try_estimate(blc, cfg.toa);

        SweepRow &row = rows[i];
        row.height_m = heights[i];
        row.rsrp_dB = 10.0 * std::log10(blc.band_power);
        row.rsrpp_dB = toa.detected ? toa.first_path_power_dB : -std::numeric_limits<double>::infinity();
        row.kec = kec(cir, cfg.upsilon);
        row.sf_dB = lsps[i].sf_dB;
        if (has_ground_reflection(mode))
            row.gr_excess_delay = ground_reflection_path(link, cfg.combiner.reflection_loss_dB).excess_delay;
    }

    csv::Table t(describe(cfg, "height_sweep", std::string(to_string(mode)), 1),
                 {"height_m", "rsrp_dB", "rsrpp_dB", "kec_dB"});
    for (const auto &r : rows)
        t.row({csv::num(r.height_m), csv::num(r.rsrp_dB), csv::num(r.rsrpp_dB), kec_cell(r.kec)});
    t.save(out_dir / ("height_sweep_" + file_id(mode) + ".csv"));
    return rows;
}

DropResult dump_cir(const SimConfig &cfg, CombinerMode mode, std::uint64_t drop_index,
                    const std::filesystem::path &out_dir)
{
    DropResult res = simulate_drop(cfg, mode, drop_index);
    const std::string id(to_string(mode));
    const std::string stem = "cir_" + file_id(mode) + "_drop" + std::to_string(drop_index);

    csv::Table wb(describe(cfg, "wideband_cir drop=" + std::to_string(drop_index), id, 1),
                  {"delay_ns", "power_dB", "phase_rad", "origin", "builder"});
    for (const auto &c : res.cir.clusters)
        wb.row({csv::num(c.delay * 1e9), csv::num(10.0 * std::log10(c.power)), csv::num(c.phase), to_string(c.origin),
                to_string(c.tag)});
    wb.save(out_dir / (stem + "_wideband.csv"));

    csv::Table bl(describe(cfg, "bandlimited_cir drop=" + std::to_string(drop_index), id, 1),
                  {"time_ns", "real", "imag", "magnitude_dB"});
    for (std::size_t i = 0; i < res.blc.samples.size(); ++i)
    {
        const auto s = res.blc.samples[i];
        bl.row({csv::num(res.blc.time_at(i) * 1e9), csv::num(s.real()), csv::num(s.imag()),
                csv::num(20.0 * std::log10(std::abs(s)))});
    }
    bl.save(out_dir / (stem + "_bandlimited.csv"));
    return res;
}

void write_plot_scripts(const std::filesystem::path &out_dir)
{
    struct Script
    {
        const char *name;
        const char *body;
    };
    static const Script scripts[] = {
        {"plot_stats.gp",
         "set datafile separator ','\nset key bottom right\nset grid\n"
         "set xlabel 'K [dB]'\nset ylabel 'CDF'\n"
         "set terminal pngcairo size 900,600\n"
         "set output 'overall_k_cdf.png'\n"
         "plot for [c in '104_20 104_60 104_63 104_66'] 'stats_'.c.'_overall_k.csv' every ::2 using 1:2 "
         "with steps title c\n"
         "set xlabel 'K_{EC} [dB]'\nset output 'kec_cdf.png'\n"
         "plot for [c in '104_20 104_60 104_63 104_66'] 'stats_'.c.'_kec.csv' every ::2 using 1:2 "
         "with steps title c\n"},
        {"plot_toa_cdf.gp",
         "set datafile separator ','\nset key bottom right\nset grid\nset logscale x\n"
         "set xlabel '|ToA error| [ns]'\nset ylabel 'CDF'\n"
         "set terminal pngcairo size 900,600\nset output 'toa_cdf.png'\n"
         "plot for [b in 'bin0 bin1 bin2 bin3 bin4 noec'] 'toa_cdf_'.b.'.csv' every ::2 using 1:2 "
         "with steps title b\n"},
        {"plot_height_sweep.gp",
         "set datafile separator ','\nset key bottom right\nset grid\n"
         "set xlabel 'UE height [m]'\nset ylabel 'power [dB]'\n"
         "set terminal pngcairo size 900,600\n"
         "do for [c in '104_20 104_60 104_63 104_66'] {\n"
         "  f = 'height_sweep_'.c.'.csv'\n"
         "  if (system('test -f '.f.' && echo 1') eq '1') {\n"
         "    set output 'height_sweep_'.c.'.png'\n"
         "    plot f every ::2 using 1:2 with lines title 'RSRP', f every ::2 using 1:3 with lines title 'RSRPP'\n"
         "  }\n}\n"},
        {"plot_cir.gp",
         "# usage: gnuplot -e \"stem='cir_104_60_drop0'\" plot_cir.gp\n"
         "set datafile separator ','\nset grid\nset xlabel 'delay [ns]'\nset ylabel 'magnitude [dB]'\n"
         "set terminal pngcairo size 900,600\nset output stem.'.png'\n"
         "plot stem.'_bandlimited.csv' every ::2 using 1:4 with lines title 'band-limited', "
         "stem.'_wideband.csv' every ::2 using 1:($2/1.0) with impulses title 'wideband taps'\n"},
    };
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    for (const auto &s : scripts)
    {
        std::ofstream out(out_dir / s.name, std::ios::binary | std::ios::trunc);
        if (!out || !(out << s.body))
            throw IoError("cannot write " + (out_dir / s.name).string());
    }
}

} // namespace chansim
