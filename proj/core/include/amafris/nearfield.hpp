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

#include <span>
#include <vector>

#include "amafris/array.hpp"

namespace amafris
{

struct ChannelConfig
{
    double carrier_hz = 100e9;
    double bandwidth_hz = 5e9;
    int n_subcarriers = 8;
    double feed_distance = 8.0; // F, half-wavelengths
    int ris_nx = 16, ris_nz = 16;
    int amaf_nh = 4, amaf_nv = 4;

    [[nodiscard]] double wavelength_m() const { return kSpeedOfLight / carrier_hz; }
    [[nodiscard]] double subcarrier_spacing_hz() const { return bandwidth_hz / n_subcarriers; }
    // f_nu = -W/2 + nu * W / N_F, baseband.
    [[nodiscard]] double subcarrier_hz(int nu) const;

    [[nodiscard]] PlanarArray ris(double z_offset = 0.0) const;
    [[nodiscard]] PlanarArray amaf(double z_offset = 0.0) const;

    void validate() const;
};

// Friis matrix between a feeder and a RIS at baseband frequency f:
//   T_kl = sqrt(E_A E_R) / (2 pi r_kl) * exp(-j pi r_kl (1 + f / f0))
// with r in half-wavelengths and element patterns evaluated per pair from
// the actual displacement. The RIS faces +y, the feeder faces -y.
// Throws std::domain_error for coincident elements.
CMatrix channel_matrix(std::span<const Vec3> ris_positions, std::span<const Vec3> amaf_positions,
                       double f_over_f0);

struct NearFieldChannel
{
    std::vector<CMatrix> t;               // one N_p x N_a matrix per subcarrier
    std::vector<double> subcarrier_freqs; // Hz, baseband
    CMatrix center;                       // T(0), independent of N_F parity
};

NearFieldChannel build_channel(const ChannelConfig &cfg);

// Narrowband model holds while W * delta_tau <= 0.125.
inline constexpr double kNarrowbandProduct = 0.125;

struct DelayReport
{
    double psi_rad = 0.0;
    double tau_max_s = 0.0;
    double tau_min_s = 0.0;
    double delta_tau_max_s = 0.0;
    // max r - min r over all element pairs plus the RIS steering delay
    double delta_tau_brute_force_s = 0.0;
    double w_narrowband_hz = 0.0;
    int isi_length = 0;
    double cp_overhead = 0.0;
};

DelayReport delay_report(const ChannelConfig &cfg, double psi_max);

// Off-boresight angle acos(cos phi cos theta).
double psi_from_cell(double phi, double theta);

// Lambda / (Lambda + N_F); zero when there is no ISI.
double cp_overhead(int isi_length, int n_subcarriers);

} // namespace amafris
