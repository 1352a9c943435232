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

#include "amafris/budget.hpp"

#include <cmath>

#include "amafris/errors.hpp"

namespace amafris
{

double LinkBudget::p_amaf_w() const { return dbm_to_watts(p_amaf_dbm); }

double LinkBudget::noise_w() const { return dbm_to_watts(noise_dbm); }

double max_slant_distance(const StackConfig &cfg)
{
    // The stack rises (K - 1) module pitches above the reference height.
    const double pitch_m = 0.5 * cfg.geometry.wavelength_m * (cfg.base.ris_nz + cfg.h_sep);
    const double top_m = cfg.geometry.height_m + static_cast<double>(cfg.modules - 1) * pitch_m;
    return std::hypot(top_m, cfg.geometry.r_max_m);
}

double free_space_loss_db(double carrier_hz, double distance_m, const BudgetParams &params)
{
    if (!(carrier_hz > 0.0) || !(distance_m > 0.0))
        throw ValidationError("carrier_ghz", "frequency and distance must be positive");
    return params.fspl_constant_db + 20.0 * std::log10(carrier_hz / 1e9) + 20.0 * std::log10(distance_m);
}

LinkBudget link_budget(const StackConfig &cfg, const BudgetParams &params, double edge_gain_dbi)
{
    cfg.validate();
    LinkBudget b;
    b.slant_max_m = max_slant_distance(cfg);
    b.l_max_db = free_space_loss_db(cfg.base.carrier_hz, b.slant_max_m, params);
    b.noise_dbm = params.thermal_psd_dbm_hz + 10.0 * std::log10(cfg.base.bandwidth_hz) + params.noise_figure_db;
    b.snr_target_db = params.snr_target_db;
    b.rx_target_dbm = b.noise_dbm + b.snr_target_db;
    b.eirp_dbm = b.rx_target_dbm + b.l_max_db;
    b.edge_gain_dbi = edge_gain_dbi;
    b.p_amaf_dbm = b.eirp_dbm - edge_gain_dbi;
    return b;
}

double edge_gain_dbi(const PemPrecoder &pem, const ChannelConfig &channel, const GeometryConfig &geometry)
{
    const auto positions = element_positions(channel.ris());
    const Direction edge = cell_edge_direction(geometry);
    const PhaseProfile w = steering_phases(pem, positions, edge, std::nullopt);
    const CVector u = pem.sigma_link() * pem.u1;
    return to_db(radiation_pattern(u, w.phasors(), positions, edge));
}

} // namespace amafris
