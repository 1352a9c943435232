// SPDX-License-Identifier: Apache-2.0
//
// amafris: near-field fed RIS multibeam downlink simulator
// Copyright (C) 2026 The amafris Authors
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

#include "amafris/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "amafris/errors.hpp"

namespace amafris
{

namespace
{

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double as_number(const YAML::Node &n, const std::string &key)
{
    try
    {
        return n.as<double>();
    }
    catch (const YAML::Exception &)
    {
        throw ValidationError(key, "expected a number");
    }
}

long long as_integer(const YAML::Node &n, const std::string &key)
{
    const double v = as_number(n, key);
    if (std::floor(v) != v || std::abs(v) > 9.0e15)
        throw ValidationError(key, "expected an integer");
    return static_cast<long long>(v);
}

using Setter = std::function<void(SystemConfig &, const YAML::Node &, const std::string &)>;

const std::map<std::string, Setter> &setters()
{
    static const std::map<std::string, Setter> table = {
        {"h_m", [](auto &c, auto &n, auto &k) { c.geometry.height_m = as_number(n, k); }},
        {"alpha_deg",
         [](auto &c, auto &n, auto &k) {
             if (n.IsScalar() && n.Scalar() == "auto")
             {
                 c.downtilt_auto = true;
                 return;
             }
             c.downtilt_auto = false;
             c.geometry.downtilt_rad = deg_to_rad(as_number(n, k));
         }},
        {"r_min_m", [](auto &c, auto &n, auto &k) { c.geometry.r_min_m = as_number(n, k); }},
        {"r_max_m", [](auto &c, auto &n, auto &k) { c.geometry.r_max_m = as_number(n, k); }},
        {"phi_span_deg", [](auto &c, auto &n, auto &k) { c.geometry.phi_span_rad = deg_to_rad(as_number(n, k)); }},
        {"carrier_ghz", [](auto &c, auto &n, auto &k) { c.channel.carrier_hz = 1e9 * as_number(n, k); }},
        {"bandwidth_ghz", [](auto &c, auto &n, auto &k) { c.channel.bandwidth_hz = 1e9 * as_number(n, k); }},
        {"n_subcarriers",
         [](auto &c, auto &n, auto &k) { c.channel.n_subcarriers = static_cast<int>(as_integer(n, k)); }},
        {"feed_distance", [](auto &c, auto &n, auto &k) { c.channel.feed_distance = as_number(n, k); }},
        {"ris_nx", [](auto &c, auto &n, auto &k) { c.channel.ris_nx = static_cast<int>(as_integer(n, k)); }},
        {"ris_nz", [](auto &c, auto &n, auto &k) { c.channel.ris_nz = static_cast<int>(as_integer(n, k)); }},
        {"amaf_nh", [](auto &c, auto &n, auto &k) { c.channel.amaf_nh = static_cast<int>(as_integer(n, k)); }},
        {"amaf_nv", [](auto &c, auto &n, auto &k) { c.channel.amaf_nv = static_cast<int>(as_integer(n, k)); }},
        {"modules", [](auto &c, auto &n, auto &k) { c.modules = static_cast<int>(as_integer(n, k)); }},
        {"h_sep", [](auto &c, auto &n, auto &k) { c.h_sep = as_number(n, k); }},
        {"noise_figure_db", [](auto &c, auto &n, auto &k) { c.budget.noise_figure_db = as_number(n, k); }},
        {"snr_target_db", [](auto &c, auto &n, auto &k) { c.budget.snr_target_db = as_number(n, k); }},
        {"thermal_psd_dbm_hz", [](auto &c, auto &n, auto &k) { c.budget.thermal_psd_dbm_hz = as_number(n, k); }},
        {"fspl_constant_db", [](auto &c, auto &n, auto &k) { c.budget.fspl_constant_db = as_number(n, k); }},
        {"seed",
         [](auto &c, auto &n, auto &k) {
             const long long v = as_integer(n, k);
             if (v < 0)
                 throw ValidationError(k, "seed must be nonnegative");
             c.experiment.seed = static_cast<std::uint64_t>(v);
         }},
        {"drops", [](auto &c, auto &n, auto &k) { c.experiment.drops = static_cast<int>(as_integer(n, k)); }},
        {"users", [](auto &c, auto &n, auto &k) { c.experiment.users = static_cast<int>(as_integer(n, k)); }},
        {"quant_bits",
         [](auto &c, auto &n, auto &k) {
             if (n.IsNull() || (n.IsScalar() && n.Scalar() == "none"))
                 c.experiment.quant_bits.reset();
             else
                 c.experiment.quant_bits = static_cast<int>(as_integer(n, k));
         }},
        {"pointing_sigma_deg",
         [](auto &c, auto &n, auto &k) { c.experiment.pointing_sigma_rad = deg_to_rad(as_number(n, k)); }},
        {"min_sep_deg", [](auto &c, auto &n, auto &k) { c.experiment.min_sep_rad = deg_to_rad(as_number(n, k)); }},
        {"footprint_grid_m", [](auto &c, auto &n, auto &k) { c.experiment.footprint_grid_m = as_number(n, k); }},
        {"threads",
         [](auto &c, auto &n, auto &k) {
             const long long v = as_integer(n, k);
             if (v < 1)
                 throw ValidationError(k, "need at least one thread");
             c.experiment.threads = static_cast<unsigned>(v);
         }},
    };
    return table;
}

void finalize(SystemConfig &cfg)
{
    if (!(cfg.channel.carrier_hz > 0.0))
        throw ValidationError("carrier_ghz", "carrier must be positive");
    cfg.geometry.wavelength_m = cfg.channel.wavelength_m();
    if (cfg.downtilt_auto)
    {
        if (!(cfg.geometry.height_m > 0.0))
            throw ValidationError("h_m", "RIS height must be positive");
        if (!(cfg.geometry.r_min_m > 0.0))
            throw ValidationError("r_min_m", "minimum range must be positive");
        cfg.geometry.downtilt_rad = downtilt_from_cell(cfg.geometry);
    }
    cfg.validate();
}

} // namespace

SystemConfig::SystemConfig()
{
    geometry.wavelength_m = channel.wavelength_m();
    geometry.downtilt_rad = downtilt_from_cell(geometry);
}

StackConfig SystemConfig::stack() const { return stack(modules); }

StackConfig SystemConfig::stack(int modules_override) const
{
    return {modules_override, h_sep, channel, geometry};
}

void SystemConfig::validate() const
{
    geometry.validate();
    channel.validate();
    if (std::abs(geometry.wavelength_m - channel.wavelength_m()) > 1e-12 * channel.wavelength_m())
        throw ValidationError("carrier_ghz", "geometry wavelength does not match the carrier");
    if (modules < 1)
        throw ValidationError("modules", "need at least one module");
    if (!(h_sep >= 0.0))
        throw ValidationError("h_sep", "module gap must be nonnegative");
    if (!std::isfinite(budget.noise_figure_db) || budget.noise_figure_db < 0.0)
        throw ValidationError("noise_figure_db", "noise figure must be finite and nonnegative");
    if (!std::isfinite(budget.snr_target_db))
        throw ValidationError("snr_target_db", "SNR target must be finite");
    if (!std::isfinite(budget.thermal_psd_dbm_hz))
        throw ValidationError("thermal_psd_dbm_hz", "noise density must be finite");
    if (!std::isfinite(budget.fspl_constant_db))
        throw ValidationError("fspl_constant_db", "constant must be finite");
    if (experiment.drops < 1)
        throw ValidationError("drops", "need at least one drop");
    if (experiment.users < 1)
        throw ValidationError("users", "need at least one user");
    if (experiment.quant_bits && (*experiment.quant_bits < 1 || *experiment.quant_bits > 30))
        throw ValidationError("quant_bits", "quantization must use 1 to 30 bits");
    if (!(experiment.pointing_sigma_rad >= 0.0))
        throw ValidationError("pointing_sigma_deg", "pointing error must be nonnegative");
    if (!(experiment.min_sep_rad >= 0.0))
        throw ValidationError("min_sep_deg", "separation must be nonnegative");
    if (!(experiment.footprint_grid_m > 0.0))
        throw ValidationError("footprint_grid_m", "grid spacing must be positive");
    if (experiment.threads < 1)
        throw ValidationError("threads", "need at least one thread");
}

std::vector<std::string> SystemConfig::warnings() const
{
    std::vector<std::string> out;
    const Direction edge = cell_edge_direction(geometry);
    const DelayReport rep = delay_report(channel, psi_from_cell(edge.phi, edge.theta));
    const double product = channel.bandwidth_hz * rep.delta_tau_max_s;
    if (product > kNarrowbandProduct)
        out.push_back("W * delta_tau_max = " + num(product) + " exceeds the narrowband bound " +
                      num(kNarrowbandProduct) + "; frequency selectivity spans " + std::to_string(rep.isi_length) +
                      " chip(s)");
    return out;
}

SystemConfig parse_config(std::string_view yaml_text)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(std::string(yaml_text));
    }
    catch (const YAML::Exception &e)
    {
        throw ValidationError("", std::string("config parse error: ") + e.what());
    }

    SystemConfig cfg;
    if (root.IsNull())
    {
        finalize(cfg);
        return cfg;
    }
    if (!root.IsMap())
        throw ValidationError("", "config must be a key-value mapping");

    const auto &table = setters();
    for (const auto &kv : root)
    {
        const auto key = kv.first.as<std::string>();
        const auto it = table.find(key);
        if (it == table.end())
            throw ValidationError(key, "unknown key");
        it->second(cfg, kv.second, key);
    }
    finalize(cfg);
    return cfg;
}

SystemConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::vector<std::pair<std::string, std::string>> config_snapshot(const SystemConfig &cfg)
{
    const auto &g = cfg.geometry;
    const auto &c = cfg.channel;
    const auto &e = cfg.experiment;
    return {
        {"h_m", num(g.height_m)},
        {"alpha_deg", cfg.downtilt_auto ? "auto" : num(rad_to_deg(g.downtilt_rad))},
        {"alpha_resolved_deg", num(rad_to_deg(g.downtilt_rad))},
        {"r_min_m", num(g.r_min_m)},
        {"r_max_m", num(g.r_max_m)},
        {"phi_span_deg", num(rad_to_deg(g.phi_span_rad))},
        {"carrier_ghz", num(c.carrier_hz / 1e9)},
        {"bandwidth_ghz", num(c.bandwidth_hz / 1e9)},
        {"n_subcarriers", std::to_string(c.n_subcarriers)},
        {"feed_distance", num(c.feed_distance)},
        {"ris_nx", std::to_string(c.ris_nx)},
        {"ris_nz", std::to_string(c.ris_nz)},
        {"amaf_nh", std::to_string(c.amaf_nh)},
        {"amaf_nv", std::to_string(c.amaf_nv)},
        {"modules", std::to_string(cfg.modules)},
        {"h_sep", num(cfg.h_sep)},
        {"noise_figure_db", num(cfg.budget.noise_figure_db)},
        {"snr_target_db", num(cfg.budget.snr_target_db)},
        {"thermal_psd_dbm_hz", num(cfg.budget.thermal_psd_dbm_hz)},
        {"fspl_constant_db", num(cfg.budget.fspl_constant_db)},
        {"seed", std::to_string(e.seed)},
        {"drops", std::to_string(e.drops)},
        {"users", std::to_string(e.users)},
        {"quant_bits", e.quant_bits ? std::to_string(*e.quant_bits) : "none"},
        {"pointing_sigma_deg", num(rad_to_deg(e.pointing_sigma_rad))},
        {"min_sep_deg", num(rad_to_deg(e.min_sep_rad))},
        {"footprint_grid_m", num(e.footprint_grid_m)},
    };
}

} // namespace amafris
