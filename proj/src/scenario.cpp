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
#include "chansim/scenario.hpp"
#include "chansim/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace chansim
{

namespace
{

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_double(const std::string &key, const std::string &v)
{
    double out = 0.0;
    const char *first = v.data();
    const char *last = v.data() + v.size();
    if (!v.empty() && v.front() == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last)
        throw ParseError("key '" + key + "': cannot parse '" + v + "' as a number");
    return out;
}

long long parse_int(const std::string &key, const std::string &v)
{
    long long out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ParseError("key '" + key + "': cannot parse '" + v + "' as an integer");
    return out;
}

std::uint64_t parse_u64(const std::string &key, const std::string &v)
{
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ParseError("key '" + key + "': cannot parse '" + v + "' as an unsigned integer");
    return out;
}

bool parse_bool(const std::string &key, const std::string &v)
{
    const auto l = lower(v);
    if (l == "true" || l == "1" || l == "yes" || l == "on")
        return true;
    if (l == "false" || l == "0" || l == "no" || l == "off")
        return false;
    throw ParseError("key '" + key + "': cannot parse '" + v + "' as a boolean");
}

std::string fmt_double(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_bool(bool v) { return v ? "true" : "false"; }

PathlossModel parse_pathloss(const std::string &key, const std::string &v)
{
    const auto l = lower(v);
    if (l == "free_space" || l == "freespace")
        return PathlossModel::FreeSpace;
    if (l == "inf_los" || l == "inf-los")
        return PathlossModel::InFLos;
    throw ParseError("key '" + key + "': unknown pathloss model '" + v + "'");
}

std::string pathloss_name(PathlossModel m) { return m == PathlossModel::FreeSpace ? "free_space" : "inf_los"; }

std::vector<double> parse_list(const std::string &key, const std::string &v)
{
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        auto t = trim(item);
        if (!t.empty())
            out.push_back(parse_double(key, t));
    }
    return out;
}

std::string fmt_list(const std::vector<double> &v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + fmt_double(v[i]);
    return out;
}

std::optional<double> parse_opt_double(const std::string &key, const std::string &v)
{
    if (lower(v) == "inherit")
        return std::nullopt;
    return parse_double(key, v);
}

std::string fmt_opt(const std::optional<double> &v) { return v ? fmt_double(*v) : "inherit"; }

struct KeyDef
{
    const char *key;
    std::function<void(SimConfig &, const std::string &, const std::string &)> set;
    std::function<std::string(const SimConfig &)> get;
};

#define CHANSIM_DOUBLE_KEY(name, field)                                                                        \
    KeyDef                                                                                                     \
    {                                                                                                          \
        name, [](SimConfig &c, const std::string &k, const std::string &v) { c.field = parse_double(k, v); }, \
            [](const SimConfig &c) { return fmt_double(c.field); }                                            \
    }

#define CHANSIM_BOOL_KEY(name, field)                                                                        \
    KeyDef                                                                                                   \
    {                                                                                                        \
        name, [](SimConfig &c, const std::string &k, const std::string &v) { c.field = parse_bool(k, v); }, \
            [](const SimConfig &c) { return fmt_bool(c.field); }                                            \
    }

#define CHANSIM_INT_KEY(name, field)                                                                                     \
    KeyDef                                                                                                               \
    {                                                                                                                    \
        name, [](SimConfig &c, const std::string &k, const std::string &v) { c.field = static_cast<int>(parse_int(k, v)); }, \
            [](const SimConfig &c) { return std::to_string(c.field); }                                                  \
    }

#define CHANSIM_OPT_KEY(name, field)                                                                              \
    KeyDef                                                                                                        \
    {                                                                                                             \
        name, [](SimConfig &c, const std::string &k, const std::string &v) { c.field = parse_opt_double(k, v); }, \
            [](const SimConfig &c) { return fmt_opt(c.field); }                                                  \
    }

const std::vector<KeyDef> &key_table()
{
    static const std::vector<KeyDef> table = {
        {"scenario.name", [](SimConfig &c, const std::string &, const std::string &v) { c.scenario.name = v; },
         [](const SimConfig &c) { return c.scenario.name; }},
        CHANSIM_DOUBLE_KEY("scenario.r_tau", scenario.r_tau),
        CHANSIM_INT_KEY("scenario.num_clusters", scenario.num_clusters),
        CHANSIM_DOUBLE_KEY("scenario.mu_lgDS", scenario.mu_lgDS),
        CHANSIM_DOUBLE_KEY("scenario.sigma_lgDS", scenario.sigma_lgDS),
        CHANSIM_DOUBLE_KEY("scenario.mu_K_dB", scenario.mu_K_dB),
        CHANSIM_DOUBLE_KEY("scenario.sigma_K_dB", scenario.sigma_K_dB),
        CHANSIM_DOUBLE_KEY("scenario.sigma_SF_dB", scenario.sigma_SF_dB),
        CHANSIM_DOUBLE_KEY("scenario.zeta_dB", scenario.zeta_dB),
        CHANSIM_DOUBLE_KEY("scenario.decorr_DS_m", scenario.decorr_DS_m),
        CHANSIM_DOUBLE_KEY("scenario.decorr_K_m", scenario.decorr_K_m),
        CHANSIM_DOUBLE_KEY("scenario.decorr_SF_m", scenario.decorr_SF_m),
        {"scenario.pathloss",
         [](SimConfig &c, const std::string &k, const std::string &v) { c.scenario.pathloss = parse_pathloss(k, v); },
         [](const SimConfig &c) { return pathloss_name(c.scenario.pathloss); }},
        CHANSIM_BOOL_KEY("scenario.los_delay_scaling", scenario.los_delay_scaling),
        CHANSIM_BOOL_KEY("scenario.vertical_decorrelation", scenario.vertical_decorrelation),
        CHANSIM_DOUBLE_KEY("scenario.xcorr_DS_K", scenario.xcorr_DS_K),
        CHANSIM_DOUBLE_KEY("scenario.xcorr_DS_SF", scenario.xcorr_DS_SF),
        CHANSIM_DOUBLE_KEY("scenario.xcorr_K_SF", scenario.xcorr_K_SF),

        CHANSIM_DOUBLE_KEY("link.bs_x", link.bs.x),
        CHANSIM_DOUBLE_KEY("link.bs_y", link.bs.y),
        CHANSIM_DOUBLE_KEY("link.bs_z", link.bs.z),
        CHANSIM_DOUBLE_KEY("link.ue_x", link.ue.x),
        CHANSIM_DOUBLE_KEY("link.ue_y", link.ue.y),
        CHANSIM_DOUBLE_KEY("link.ue_z", link.ue.z),
        CHANSIM_DOUBLE_KEY("link.carrier_hz", link.carrier_hz),

        {"combiner.mode",
         [](SimConfig &c, const std::string &, const std::string &v) { c.combiner.mode = parse_combiner_mode(v); },
         [](const SimConfig &c) { return std::string(to_string(c.combiner.mode)); }},
        CHANSIM_DOUBLE_KEY("combiner.ec_power_ratio", combiner.ec_power_ratio),
        CHANSIM_BOOL_KEY("combiner.maintain_overall_k", combiner.maintain_overall_k),
        CHANSIM_DOUBLE_KEY("combiner.reflection_loss_dB", combiner.reflection_loss_dB),

        CHANSIM_OPT_KEY("ec.r_tau", combiner.ec_overrides.r_tau),
        {"ec.num_clusters",
         [](SimConfig &c, const std::string &k, const std::string &v) {
             if (lower(v) == "inherit")
                 c.combiner.ec_overrides.num_clusters.reset();
             else
                 c.combiner.ec_overrides.num_clusters = static_cast<int>(parse_int(k, v));
         },
         [](const SimConfig &c) {
             const auto &n = c.combiner.ec_overrides.num_clusters;
             return n ? std::to_string(*n) : std::string("inherit");
         }},
        CHANSIM_OPT_KEY("ec.mu_lgDS", combiner.ec_overrides.mu_lgDS),
        CHANSIM_OPT_KEY("ec.sigma_lgDS", combiner.ec_overrides.sigma_lgDS),
        CHANSIM_OPT_KEY("ec.zeta_dB", combiner.ec_overrides.zeta_dB),

        CHANSIM_DOUBLE_KEY("signal.bandwidth_hz", signal.bandwidth_hz),
        CHANSIM_DOUBLE_KEY("signal.sample_rate_hz", signal.sample_rate_hz),
        CHANSIM_DOUBLE_KEY("signal.subcarrier_spacing_hz", signal.subcarrier_spacing_hz),
        CHANSIM_DOUBLE_KEY("signal.window_s", signal.window_s),
        CHANSIM_DOUBLE_KEY("signal.pre_roll_s", signal.pre_roll_s),
        CHANSIM_INT_KEY("signal.oversample", signal.oversample),
        CHANSIM_INT_KEY("signal.comb", signal.comb),
        CHANSIM_DOUBLE_KEY("signal.snr_dB", signal.snr_dB),

        CHANSIM_DOUBLE_KEY("toa.detect_threshold_dB", toa.detect_threshold_dB),
        CHANSIM_DOUBLE_KEY("toa.edge_search_back_s", toa.edge_search_back_s),

        CHANSIM_DOUBLE_KEY("sweep.h_min", sweep.h_min),
        CHANSIM_DOUBLE_KEY("sweep.h_max", sweep.h_max),
        CHANSIM_INT_KEY("sweep.steps", sweep.steps),

        CHANSIM_DOUBLE_KEY("sim.upsilon_s", upsilon),
        {"sim.seed", [](SimConfig &c, const std::string &k, const std::string &v) { c.rng_seed = parse_u64(k, v); },
         [](const SimConfig &c) { return std::to_string(c.rng_seed); }},
        CHANSIM_INT_KEY("sim.drops", num_drops),
        {"sim.kec_bins", [](SimConfig &c, const std::string &k, const std::string &v) { c.kec_bins = parse_list(k, v); },
         [](const SimConfig &c) { return fmt_list(c.kec_bins); }},
    };
    return table;
}

#undef CHANSIM_DOUBLE_KEY
#undef CHANSIM_BOOL_KEY
#undef CHANSIM_INT_KEY
#undef CHANSIM_OPT_KEY

void require(bool cond, const std::string &what)
{
    if (!cond)
        throw ValidationError(what);
}

std::pair<std::string, std::string> split_assignment(std::string_view s)
{
    auto eq = s.find('=');
    if (eq == std::string_view::npos)
        throw ParseError("expected 'key = value', got '" + std::string(s) + "'");
    auto key = trim(s.substr(0, eq));
    auto value = trim(s.substr(eq + 1));
    if (key.empty())
        throw ParseError("empty key in '" + std::string(s) + "'");
    return {key, value};
}

std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

double distance_3d(const Vec3 &a, const Vec3 &b)
{
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

double distance_2d(const Vec3 &a, const Vec3 &b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

void ScenarioParams::validate() const
{
    require(r_tau > 1.0, "r_tau must exceed 1");
    require(num_clusters >= 1, "num_clusters must be at least 1");
    require(sigma_lgDS >= 0.0 && sigma_K_dB >= 0.0 && sigma_SF_dB >= 0.0 && zeta_dB >= 0.0,
            "standard deviations must be non-negative");
    require(std::isfinite(mu_lgDS) && std::isfinite(mu_K_dB), "distribution means must be finite");
    require(decorr_DS_m > 0.0 && decorr_K_m > 0.0 && decorr_SF_m > 0.0, "decorrelation distances must be positive");
    for (double r : {xcorr_DS_K, xcorr_DS_SF, xcorr_K_SF})
        require(r > -1.0 && r < 1.0, "LSP cross-correlations must lie in (-1, 1)");
}

void GeometryLink::validate() const
{
    require(!(bs == ue), "bs_position and ue_position must differ");
    require(carrier_hz > 0.0, "carrier_frequency must be positive");
}

std::string_view to_string(CombinerMode mode)
{
    switch (mode)
    {
    case CombinerMode::Baseline_104_20:
        return "104.20";
    case CombinerMode::BaselineGR_104_60:
        return "104.60";
    case CombinerMode::TwoBuilder_104_63:
        return "104.63";
    case CombinerMode::TwoBuilderGR_104_66:
        return "104.66";
    }
    return "?";
}

CombinerMode parse_combiner_mode(std::string_view id)
{
    const auto s = trim(id);
    if (s == "104.20")
        return CombinerMode::Baseline_104_20;
    if (s == "104.60")
        return CombinerMode::BaselineGR_104_60;
    if (s == "104.63")
        return CombinerMode::TwoBuilder_104_63;
    if (s == "104.66")
        return CombinerMode::TwoBuilderGR_104_66;
    throw ParseError("unknown configuration id '" + s + "' (expected 104.20, 104.60, 104.63 or 104.66)");
}

bool has_two_builders(CombinerMode mode)
{
    return mode == CombinerMode::TwoBuilder_104_63 || mode == CombinerMode::TwoBuilderGR_104_66;
}

bool has_ground_reflection(CombinerMode mode)
{
    return mode == CombinerMode::BaselineGR_104_60 || mode == CombinerMode::TwoBuilderGR_104_66;
}

ScenarioParams EcOverrides::apply(const ScenarioParams &base) const
{
    ScenarioParams out = base;
    out.name = base.name + "/EC";
    if (r_tau)
        out.r_tau = *r_tau;
    if (num_clusters)
        out.num_clusters = *num_clusters;
    if (mu_lgDS)
        out.mu_lgDS = *mu_lgDS;
    if (sigma_lgDS)
        out.sigma_lgDS = *sigma_lgDS;
    if (zeta_dB)
        out.zeta_dB = *zeta_dB;
    return out;
}

void CombinerConfig::validate() const
{
    require(ec_power_ratio >= 0.0 && ec_power_ratio <= 1.0, "ec_power_ratio must lie in [0, 1]");
    require(reflection_loss_dB >= 0.0 && std::isfinite(reflection_loss_dB), "reflection_loss_dB must be finite and >= 0");
    if (has_two_builders(mode))
    {
        require(ec_overrides.present(), "two-builder modes require EC scenario overrides");
        // Additive mode scales EC power by ratio / (1 - ratio).
        require(maintain_overall_k || ec_power_ratio < 1.0, "ec_power_ratio must be < 1 when maintain_overall_k is off");
    }
}

int SignalParams::num_subcarriers() const
{
    int m = static_cast<int>(std::floor(bandwidth_hz / tone_spacing() + 1e-9));
    if (m % 2 == 0)
        --m; // odd count keeps the band symmetric about DC
    return m;
}

void SignalParams::validate() const
{
    require(bandwidth_hz > 0.0, "bandwidth must be positive");
    require(sample_rate_hz >= bandwidth_hz, "sample_rate must be >= bandwidth");
    require(subcarrier_spacing_hz > 0.0, "subcarrier_spacing must be positive");
    require(oversample >= 1, "oversample_factor must be a positive integer");
    require(comb >= 1, "comb must be a positive integer");
    require(window_s > 0.0, "window_length must be positive");
    require(pre_roll_s >= 0.0 && pre_roll_s < window_s, "pre_roll must lie in [0, window_length)");
    require(num_subcarriers() >= 1, "bandwidth must hold at least one subcarrier");
    // The Dirichlet kernel is periodic in 1 / tone spacing.
    require(window_s < 0.5 / tone_spacing(), "window_length must be shorter than half the kernel period");
}

void ToaConfig::validate() const
{
    require(detect_threshold_dB > 0.0, "detect_threshold_rel_dB must be positive");
    require(edge_search_back_s > 0.0, "edge_search_back must be positive");
}

void SweepParams::validate() const
{
    require(h_min > 0.0 && h_max >= h_min, "sweep heights must satisfy 0 < h_min <= h_max");
    require(steps >= 1, "sweep steps must be at least 1");
}

void SimConfig::validate() const
{
    scenario.validate();
    link.validate();
    combiner.validate();
    signal.validate();
    toa.validate();
    sweep.validate();
    require(upsilon > 0.0, "upsilon must be positive");
    require(num_drops >= 1, "num_drops must be at least 1");
    require(std::is_sorted(kec_bins.begin(), kec_bins.end()) &&
                std::adjacent_find(kec_bins.begin(), kec_bins.end()) == kec_bins.end(),
            "kec_bins must be strictly increasing");
}

ConfigEntries parse_config_text(std::string_view text)
{
    ConfigEntries out;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size())
    {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (trim(line).empty())
            continue;
        try
        {
            auto [k, v] = split_assignment(line);
            out[k] = v;
        }
        catch (const ParseError &e)
        {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::filesystem::path data_directory()
{
    if (const char *env = std::getenv("CHANSIM_DATA_DIR"); env && *env)
        return env;
#ifdef CHANSIM_DATA_DIR
    return CHANSIM_DATA_DIR;
#else
    return "data";
#endif
}

void apply_config_key(SimConfig &cfg, const std::string &key, const std::string &value)
{
    for (const auto &def : key_table())
    {
        if (key == def.key)
        {
            def.set(cfg, key, value);
            return;
        }
    }
    throw ParseError("unknown key '" + key + "'");
}

ScenarioParams load_scenario_table(std::string_view name)
{
    const auto file = data_directory() / "scenarios" / (lower(std::string(name)) + ".cfg");
    if (!std::filesystem::exists(file))
        throw ValidationError("unknown scenario '" + std::string(name) + "' (no table at " + file.string() + ")");
    SimConfig tmp;
    for (const auto &[k, v] : parse_config_text(read_file(file)))
    {
        if (k.rfind("scenario.", 0) != 0 || k == "scenario.base")
            throw ParseError("scenario table " + file.string() + " may only set scenario.* keys, found '" + k + "'");
        apply_config_key(tmp, k, v);
    }
    return tmp.scenario;
}

SimConfig config_from_text(std::string_view text, const std::vector<std::string> &overrides)
{
    auto entries = parse_config_text(text);
    std::vector<std::pair<std::string, std::string>> extra;
    for (const auto &o : overrides)
        extra.push_back(split_assignment(o));

    std::string base = "InF-LOS";
    if (auto it = entries.find("scenario.base"); it != entries.end())
        base = it->second;
    for (const auto &[k, v] : extra)
        if (k == "scenario.base")
            base = v;

    SimConfig cfg;
    cfg.scenario = load_scenario_table(base);
    for (const auto &[k, v] : entries)
        if (k != "scenario.base")
            apply_config_key(cfg, k, v);
    for (const auto &[k, v] : extra)
        if (k != "scenario.base")
            apply_config_key(cfg, k, v);
    cfg.validate();
    return cfg;
}

SimConfig load_scenario(const std::filesystem::path &path, const std::vector<std::string> &overrides)
{
    return config_from_text(read_file(path), overrides);
}

std::string to_config_text(const SimConfig &cfg)
{
    std::string out = "# chansim configuration\nscenario.base = InF-LOS\n";
    for (const auto &def : key_table())
        out += std::string(def.key) + " = " + def.get(cfg) + "\n";
    return out;
}

double pathloss_dB(const GeometryLink &link, const ScenarioParams &scenario)
{
    const double d = link.distance();
    switch (scenario.pathloss)
    {
    case PathlossModel::FreeSpace:
        return 20.0 * std::log10(4.0 * pi * d * link.carrier_hz / speed_of_light);
    case PathlossModel::InFLos:
        // TR 38.901 InF-LOS, fc in GHz.
        return 31.84 + 21.50 * std::log10(d) + 19.00 * std::log10(link.carrier_hz / 1e9);
    }
    return 0.0;
}

} // namespace chansim
