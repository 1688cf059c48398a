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
#ifndef CHANSIM_SCENARIO_HPP
#define CHANSIM_SCENARIO_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chansim
{

inline constexpr double speed_of_light = 299792458.0; // m/s
inline constexpr double pi = 3.14159265358979323846;

enum class PathlossModel
{
    FreeSpace,
    InFLos
};

// Statistical scenario table. Delay spread is lognormal in log10(seconds),
// K-factor and shadow fading are normal in dB.
struct ScenarioParams
{
    std::string name = "InF-LOS";
    double r_tau = 2.7;         // delay proportionality factor, > 1
    int num_clusters = 25;      // N
    double mu_lgDS = -7.278;    // log10(s)
    double sigma_lgDS = 0.15;   // log10(s)
    double mu_K_dB = 7.0;
    double sigma_K_dB = 8.0;
    double sigma_SF_dB = 4.3;
    double zeta_dB = 4.0;       // per-cluster shadowing std
    double decorr_DS_m = 10.0;
    double decorr_K_m = 10.0;
    double decorr_SF_m = 10.0;
    PathlossModel pathloss = PathlossModel::InFLos;

    // Apply the K-dependent LOS delay scaling to NLOS cluster delays.
    bool los_delay_scaling = true;

    // Use 3D instead of horizontal distance for LSP spatial correlation.
    bool vertical_decorrelation = false;

    // Cross-correlation coefficients between the LSP Gaussians.
    double xcorr_DS_K = 0.0;
    double xcorr_DS_SF = 0.0;
    double xcorr_K_SF = 0.0;

    void validate() const;
    bool operator==(const ScenarioParams &) const = default;
};

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    bool operator==(const Vec3 &) const = default;
};

double distance_3d(const Vec3 &a, const Vec3 &b);
double distance_2d(const Vec3 &a, const Vec3 &b);

struct GeometryLink
{
    Vec3 bs{0.0, 0.0, 1.7};
    Vec3 ue{28.0, 0.0, 1.5};
    double carrier_hz = 3.75e9;

    double wavelength() const { return speed_of_light / carrier_hz; }
    double distance() const { return distance_3d(bs, ue); }
    void validate() const;
    bool operator==(const GeometryLink &) const = default;
};

// The four channel model configurations.
enum class CombinerMode
{
    Baseline_104_20,
    BaselineGR_104_60,
    TwoBuilder_104_63,
    TwoBuilderGR_104_66
};

std::string_view to_string(CombinerMode mode);
CombinerMode parse_combiner_mode(std::string_view id);
bool has_two_builders(CombinerMode mode);
bool has_ground_reflection(CombinerMode mode);

// Partial scenario for the early-cluster builder. Unset fields inherit.
struct EcOverrides
{
    std::optional<double> r_tau = 2.0;
    std::optional<int> num_clusters = 4;
    std::optional<double> mu_lgDS = -8.301029995663981; // log10(5 ns)
    std::optional<double> sigma_lgDS = 0.0;
    std::optional<double> zeta_dB;

    bool present() const { return r_tau || num_clusters || mu_lgDS || sigma_lgDS || zeta_dB; }
    ScenarioParams apply(const ScenarioParams &base) const;
    bool operator==(const EcOverrides &) const = default;
};

struct CombinerConfig
{
    CombinerMode mode = CombinerMode::Baseline_104_20;
    double ec_power_ratio = 0.3;
    EcOverrides ec_overrides;
    bool maintain_overall_k = true;
    double reflection_loss_dB = 3.0;

    void validate() const;
    bool operator==(const CombinerConfig &) const = default;
};

// Correlation-equivalent reference signal. The occupied band is flat over
// num_subcarriers() tones spaced comb * subcarrier_spacing_hz and centred at DC.
struct SignalParams
{
    double bandwidth_hz = 100e6;
    double sample_rate_hz = 122.88e6;
    double subcarrier_spacing_hz = 30e3;
    double window_s = 1.0e-6;    // minimum observation span, extended to cover all taps
    double pre_roll_s = 100e-9;  // span before the LOS delay
    int oversample = 16;
    int comb = 1;
    double snr_dB = std::numeric_limits<double>::infinity();

    int num_subcarriers() const;
    double tone_spacing() const { return subcarrier_spacing_hz * comb; }
    double sample_period() const { return 1.0 / (sample_rate_hz * oversample); }
    void validate() const;
    bool operator==(const SignalParams &) const = default;
};

struct ToaConfig
{
    double detect_threshold_dB = 10.0;
    double edge_search_back_s = 20e-9; // 2 / bandwidth at 100 MHz

    void validate() const;
    bool operator==(const ToaConfig &) const = default;
};

struct SweepParams
{
    double h_min = 0.7;
    double h_max = 3.3;
    int steps = 261;

    void validate() const;
    bool operator==(const SweepParams &) const = default;
};

struct SimConfig
{
    ScenarioParams scenario;
    GeometryLink link;
    CombinerConfig combiner;
    SignalParams signal;
    ToaConfig toa;
    SweepParams sweep;
    std::vector<double> kec_bins{0.0, 5.0, 10.0, 15.0};
    double upsilon = 20e-9;
    std::uint64_t rng_seed = 1;
    int num_drops = 10000;

    void validate() const;
    bool operator==(const SimConfig &) const = default;
};

// Flat key/value view of a config file, in file order of last assignment.
using ConfigEntries = std::map<std::string, std::string>;

ConfigEntries parse_config_text(std::string_view text);

// Directory holding bundled scenario tables. CHANSIM_DATA_DIR in the
// environment takes precedence over the compiled-in location.
std::filesystem::path data_directory();

// Loads the bundled table for a scenario name ("InF-LOS", "synthetic").
ScenarioParams load_scenario_table(std::string_view name);

// Builds a validated config from key/value text. The scenario table named by
// `scenario.base` (default InF-LOS) is loaded first, then every other key is
// applied on top, then `overrides` ("key=value" strings) in order.
SimConfig config_from_text(std::string_view text, const std::vector<std::string> &overrides = {});

SimConfig load_scenario(const std::filesystem::path &path, const std::vector<std::string> &overrides = {});

// Complete key/value rendering; config_from_text(to_config_text(c)) == c.
std::string to_config_text(const SimConfig &cfg);

// Applies one key to a config without validating.
void apply_config_key(SimConfig &cfg, const std::string &key, const std::string &value);

double pathloss_dB(const GeometryLink &link, const ScenarioParams &scenario);

} // namespace chansim

#endif
