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

#include "amafris/geometry.hpp"
#include "amafris/multiuser.hpp"

namespace amafris
{

struct BudgetParams
{
    double noise_figure_db = 5.0;
    double snr_target_db = 0.0;
    double thermal_psd_dbm_hz = kThermalNoiseDbmPerHz;
    // Rounded free-space constant for f in GHz and d in meters.
    double fspl_constant_db = 32.5;
};

struct LinkBudget
{
    double slant_max_m = 0.0;
    double l_max_db = 0.0;
    double noise_dbm = 0.0; // W N0 including the noise figure
    double snr_target_db = 0.0;
    double rx_target_dbm = 0.0;
    double eirp_dbm = 0.0;
    double edge_gain_dbi = 0.0;
    double p_amaf_dbm = 0.0;

    [[nodiscard]] double p_amaf_w() const;
    [[nodiscard]] double noise_w() const;
};

// Slant distance from the topmost RIS of the stack to the far cell edge.
double max_slant_distance(const StackConfig &cfg);

double free_space_loss_db(double carrier_hz, double distance_m, const BudgetParams &params);

// Feed power that puts the required SNR at the cell edge given the steered
// PEM gain there (sigma1 clamped to 1).
LinkBudget link_budget(const StackConfig &cfg, const BudgetParams &params, double edge_gain_dbi);

// Steered PEM gain at the cell edge, in dBi.
double edge_gain_dbi(const PemPrecoder &pem, const ChannelConfig &channel, const GeometryConfig &geometry);

} // namespace amafris
