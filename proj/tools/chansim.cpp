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
#include "chansim/errors.hpp"
#include "chansim/harness.hpp"
#include "chansim/scenario.hpp"
#include "chansim/toa.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace chansim;

namespace
{

struct Common
{
    std::string config_path;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::optional<int> drops;
    std::string out_dir = "out";
    std::string configs;
    bool serial = false;
};

void add_common(CLI::App *cmd, Common &c, const std::string &default_configs)
{
    cmd->add_option("--config", c.config_path, "Key/value config file");
    cmd->add_option("--set", c.sets, "Override one key, e.g. --set scenario.num_clusters=12")->take_all();
    cmd->add_option("--seed", c.seed, "Master seed");
    cmd->add_option("--drops", c.drops, "Drops per configuration");
    cmd->add_option("--out-dir", c.out_dir, "Output directory")->capture_default_str();
    c.configs = default_configs;
    cmd->add_option("--configs", c.configs, "Comma-separated configuration ids")->capture_default_str();
    cmd->add_flag("--serial", c.serial, "Run drops on one thread");
}

SimConfig load(const Common &c)
{
    std::vector<std::string> overrides = c.sets;
    if (c.seed)
        overrides.push_back("sim.seed=" + std::to_string(*c.seed));
    if (c.drops)
        overrides.push_back("sim.drops=" + std::to_string(*c.drops));
    if (c.config_path.empty())
        return config_from_text("", overrides);
    return load_scenario(c.config_path, overrides);
}

std::vector<CombinerMode> modes_of(const std::string &list)
{
    std::vector<CombinerMode> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(parse_combiner_mode(item));
    if (out.empty())
        throw ValidationError("--configs must name at least one configuration");
    return out;
}

Execution exec_of(const Common &c) { return c.serial ? Execution::Serial : Execution::Parallel; }

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"chansim: statistical channel simulation for first-path ToA evaluation"};
    app.require_subcommand(1);

    Common stats_opt, toa_opt, sweep_opt, dump_opt, cal_opt;
    std::string plot_dir = "out";
    std::vector<double> bins;
    std::optional<double> h_min, h_max;
    std::optional<int> steps;
    std::uint64_t drop_index = 0;

    auto *stats = app.add_subcommand("stats", "Overall-K and K_EC CDFs per configuration");
    add_common(stats, stats_opt, "104.20,104.60,104.63,104.66");

    auto *toa = app.add_subcommand("toa-cdf", "|ToA error| CDFs grouped by K_EC over pooled configurations");
    add_common(toa, toa_opt, "104.20,104.60,104.63,104.66");
    toa->add_option("--bins", bins, "K_EC bin edges in dB (default from config)")->delimiter(',');

    auto *sweep = app.add_subcommand("height-sweep", "RSRP / RSRPP versus UE height, one frozen realization");
    add_common(sweep, sweep_opt, "104.60");
    sweep->add_option("--h-min", h_min, "Lowest UE height [m]");
    sweep->add_option("--h-max", h_max, "Highest UE height [m]");
    sweep->add_option("--steps", steps, "Number of heights");

    auto *dump = app.add_subcommand("dump-cir", "Wideband taps and band-limited trace of one drop");
    add_common(dump, dump_opt, "104.60");
    dump->add_option("--drop-index", drop_index, "Drop to dump")->capture_default_str();

    auto *cal = app.add_subcommand("calibrate", "Print the ToA estimator's calibrated offset");
    add_common(cal, cal_opt, "104.20");

    auto *plots = app.add_subcommand("plot-scripts", "Write gnuplot scripts for the CSV outputs");
    plots->add_option("--out-dir", plot_dir, "Output directory")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try
    {
        if (*stats)
        {
            const auto cfg = load(stats_opt);
            for (const auto &s : run_stats(cfg, modes_of(stats_opt.configs), stats_opt.out_dir, exec_of(stats_opt)))
                std::cout << s.config_id << ": drops=" << s.drops << " noec_fraction=" << s.noec_fraction
                          << " k_below_0dB_fraction=" << s.k_below_0_fraction << '\n';
        }
        else if (*toa)
        {
            const auto cfg = load(toa_opt);
            const auto res = run_toa_cdf(cfg, modes_of(toa_opt.configs), bins.empty() ? cfg.kec_bins : bins,
                                         toa_opt.out_dir, exec_of(toa_opt));
            for (const auto &b : res.bins)
                std::cout << b.label << ": " << b.abs_errors_ns.size() << (b.abs_errors_ns.empty() ? " (empty)" : "")
                          << '\n';
            std::cout << "nodetect: " << res.no_detection << " of " << res.total_drops << '\n';
        }
        else if (*sweep)
        {
            auto cfg = load(sweep_opt);
            if (h_min)
                cfg.sweep.h_min = *h_min;
            if (h_max)
                cfg.sweep.h_max = *h_max;
            if (steps)
                cfg.sweep.steps = *steps;
            cfg.validate();
            for (const auto mode : modes_of(sweep_opt.configs))
            {
                const auto rows = run_height_sweep(cfg, mode, sweep_opt.out_dir);
                std::cout << to_string(mode) << ": " << rows.size() << " heights\n";
            }
        }
        else if (*dump)
        {
            const auto cfg = load(dump_opt);
            for (const auto mode : modes_of(dump_opt.configs))
            {
                const auto res = dump_cir(cfg, mode, drop_index, dump_opt.out_dir);
                std::cout << to_string(mode) << " drop " << drop_index << ": " << res.cir.clusters.size()
                          << " taps, toa_error_ns=" << (res.toa.detected ? res.toa.error * 1e9 : 0.0) << '\n';
            }
        }
        else if (*cal)
        {
            const auto cfg = load(cal_opt);
            std::cout.precision(10);
            std::cout << "offset_ns=" << calibrate_offset(cfg.signal, cfg.toa) * 1e9 << '\n';
        }
        else if (*plots)
        {
            write_plot_scripts(plot_dir);
        }
    }
    catch (const IoError &e)
    {
        std::cerr << "chansim: " << e.what() << '\n';
        return 2;
    }
    catch (const Error &e)
    {
        std::cerr << "chansim: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
