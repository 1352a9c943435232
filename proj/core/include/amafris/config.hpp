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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amafris/budget.hpp"
#include "amafris/geometry.hpp"
#include "amafris/multiuser.hpp"
#include "amafris/nearfield.hpp"

namespace amafris
{

struct ExperimentOptions
{
    std::uint64_t seed = 1;
    int drops = 1000;
    int users = 4;
    std::optional<int> quant_bits;
    double pointing_sigma_rad = 0.0;
    double min_sep_rad = deg_to_rad(15.0);
    double footprint_grid_m = 0.5;
    unsigned threads = 1;
};

// Everything a run needs. Defaults reproduce the example system: 100 GHz,
// 5 GHz bandwidth, 16x16 RIS, 4x4 feeder at F = 8, K = 4 modules with
// h_sep = 10, RIS at 20 m covering 10..100 m and +/-60 deg.
struct SystemConfig
{
    GeometryConfig geometry;
    ChannelConfig channel;
    int modules = 4;
    double h_sep = 10.0;
    BudgetParams budget;
    ExperimentOptions experiment;
    bool downtilt_auto = true;

    SystemConfig();

    [[nodiscard]] StackConfig stack() const;
    [[nodiscard]] StackConfig stack(int modules_override) const;
    // Throws ValidationError naming the offending key.
    void validate() const;
    // Non-fatal consistency notes (e.g. W * delta_tau above 0.125).
    [[nodiscard]] std::vector<std::string> warnings() const;
};

// Documented keys:
//   h_m, alpha_deg (number or "auto"), r_min_m, r_max_m, phi_span_deg,
//   carrier_ghz, bandwidth_ghz, n_subcarriers, feed_distance, ris_nx, ris_nz,
//   amaf_nh, amaf_nv, modules, h_sep, noise_figure_db, snr_target_db,
//   thermal_psd_dbm_hz, fspl_constant_db, seed, drops, users, quant_bits,
//   pointing_sigma_deg, min_sep_deg, footprint_grid_m, threads
SystemConfig load_config(const std::filesystem::path &path);
SystemConfig parse_config(std::string_view yaml_text);

// Canonical key/value snapshot in the units of the config file.
std::vector<std::pair<std::string, std::string>> config_snapshot(const SystemConfig &cfg);

// Environment variable holding the default config path.
inline constexpr const char *kConfigEnvVar = "AMAFRIS_CONFIG";

} // namespace amafris
