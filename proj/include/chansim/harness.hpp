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
#ifndef CHANSIM_HARNESS_HPP
#define CHANSIM_HARNESS_HPP

#include "chansim/builder.hpp"
#include "chansim/metrics.hpp"
#include "chansim/scenario.hpp"
#include "chansim/toa.hpp"
#include "chansim/waveform.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace chansim
{

inline constexpr int csv_schema_version = 1;

enum class Execution
{
    Serial,
    Parallel
};

// One Monte Carlo drop of one configuration.
struct RunRecord
{
    std::uint64_t drop_index = 0;
    std::string config_id;
    KecValue kec;
    double overall_k_dB = 0.0;
    bool detected = false;
    double toa_error_ns = 0.0;
    double rsrp_dB = 0.0;
    double rsrpp_dB = 0.0;
    double ue_height_m = 0.0; // height sweep rows only
    std::uint64_t seed = 0;   // the drop's stream seed
};

// Stream seed of a drop: derive_seed(derive_seed(seed, code), drop_index),
// where code is the configuration id times 100 (104.63 -> 10463).
std::uint64_t drop_seed(std::uint64_t seed, CombinerMode mode, std::uint64_t drop_index);

// Everything one drop produces, for inspection and dumps.
struct DropResult
{
    Cir cir;
    BandlimitedCir blc;
    ToaEstimate toa;
    RunRecord record;
};

DropResult simulate_drop(const SimConfig &cfg, CombinerMode mode, std::uint64_t drop_index);

// cfg.num_drops drops in drop_index order. The parallel path runs drops
// concurrently with OpenMP; both paths return identical records.
std::vector<RunRecord> run_drops(const SimConfig &cfg, CombinerMode mode, Execution exec = Execution::Parallel);

struct StatsSummary
{
    std::string config_id;
    std::size_t drops = 0;
    double noec_fraction = 0.0;
    double k_below_0_fraction = 0.0;
    std::vector<RunRecord> records;
};

// Overall-K and K_EC CDFs per configuration plus a summary file.
std::vector<StatsSummary> run_stats(const SimConfig &cfg, const std::vector<CombinerMode> &modes,
                                    const std::filesystem::path &out_dir, Execution exec = Execution::Parallel);

struct KecBin
{
    std::string label;
    double lo_dB = 0.0; // inclusive
    double hi_dB = 0.0; // exclusive
    bool no_ec = false;
    std::vector<double> abs_errors_ns;
};

struct ToaCdfResult
{
    std::vector<KecBin> bins; // ascending K_EC, NoEC last
    std::size_t total_drops = 0;
    std::size_t no_detection = 0;
    std::vector<RunRecord> records;
};

// Groups the K_EC bins of a pooled drop set: (-inf, e0), [e0, e1), ...,
// [e_last, inf), then NoEC.
std::vector<KecBin> make_kec_bins(const std::vector<double> &edges);
void assign_to_bins(std::vector<KecBin> &bins, const RunRecord &record);

// Pools drops of all modes, bins them by K_EC and writes one |ToA error|
// CDF per bin, a summary, and the pooled records.
ToaCdfResult run_toa_cdf(const SimConfig &cfg, const std::vector<CombinerMode> &modes,
                         const std::vector<double> &kec_edges, const std::filesystem::path &out_dir,
                         Execution exec = Execution::Parallel);

struct SweepRow
{
    double height_m = 0.0;
    double rsrp_dB = 0.0;
    double rsrpp_dB = 0.0;
    KecValue kec;
    double gr_excess_delay = 0.0; // 0 when the mode has no ground reflection
    double sf_dB = 0.0;
};

// One LSP realization and one statistical cluster set for the whole sweep;
// LOS and ground reflection follow the UE height. UE moves vertically at
// the configured horizontal position.
std::vector<SweepRow> run_height_sweep(const SimConfig &cfg, CombinerMode mode, const std::filesystem::path &out_dir);

// Writes the wideband tap list and the band-limited trace of one drop.
DropResult dump_cir(const SimConfig &cfg, CombinerMode mode, std::uint64_t drop_index,
                    const std::filesystem::path &out_dir);

// gnuplot scripts for the CSV files the other subcommands write.
void write_plot_scripts(const std::filesystem::path &out_dir);

} // namespace chansim

#endif
