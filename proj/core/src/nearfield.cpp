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

#include "amafris/nearfield.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "amafris/errors.hpp"

namespace amafris
{

double ChannelConfig::subcarrier_hz(int nu) const
{
    return -0.5 * bandwidth_hz + static_cast<double>(nu) * subcarrier_spacing_hz();
}

PlanarArray ChannelConfig::ris(double z_offset) const
{
    return {ris_nx, ris_nz, Vec3(0.0, 0.0, z_offset), 0.0};
}

PlanarArray ChannelConfig::amaf(double z_offset) const
{
    return {amaf_nh, amaf_nv, Vec3(0.0, 0.0, z_offset), feed_distance};
}

void ChannelConfig::validate() const
{
    if (!(bandwidth_hz > 0.0))
        throw ValidationError("bandwidth_ghz", "bandwidth must be positive");
    if (!(carrier_hz > 0.5 * bandwidth_hz))
        throw ValidationError("carrier_ghz", "carrier must exceed half the bandwidth");
    if (n_subcarriers < 1)
        throw ValidationError("n_subcarriers", "need at least one subcarrier");
    if (!(feed_distance > 0.0))
        throw ValidationError("feed_distance", "feeder distance must be positive");
    if (ris_nx < 1 || ris_nz < 1)
        throw ValidationError("ris_nx", "RIS needs at least one element per axis");
    if (amaf_nh < 1 || amaf_nv < 1)
        throw ValidationError("amaf_nh", "feeder needs at least one element per axis");
}

CMatrix channel_matrix(std::span<const Vec3> ris_positions, std::span<const Vec3> amaf_positions,
                       double f_over_f0)
{
    const auto np = static_cast<Eigen::Index>(ris_positions.size());
    const auto na = static_cast<Eigen::Index>(amaf_positions.size());
    CMatrix t(np, na);
    const Vec3 ris_normal(0.0, 1.0, 0.0);
    const Vec3 amaf_normal(0.0, -1.0, 0.0);
    for (Eigen::Index l = 0; l < na; ++l)
    {
        const Vec3 &q = amaf_positions[static_cast<std::size_t>(l)];
        for (Eigen::Index k = 0; k < np; ++k)
        {
            const Vec3 d = q - ris_positions[static_cast<std::size_t>(k)]; // RIS -> feeder
            const double r = d.norm();
            if (!(r > 0.0))
                throw std::domain_error("channel_matrix: coincident RIS and feeder elements");
            const double e_r = patch_gain_from_cos(d.dot(ris_normal) / r);
            const double e_a = patch_gain_from_cos(-d.dot(amaf_normal) / r);
            const double mag = std::sqrt(e_a * e_r) / (2.0 * kPi * r);
            t(k, l) = std::polar(mag, -kPi * r * (1.0 + f_over_f0));
        }
    }
    return t;
}

NearFieldChannel build_channel(const ChannelConfig &cfg)
{
    cfg.validate();
    const auto ris = element_positions(cfg.ris());
    const auto amaf = element_positions(cfg.amaf());
    NearFieldChannel ch;
    ch.center = channel_matrix(ris, amaf, 0.0);
    ch.t.reserve(static_cast<std::size_t>(cfg.n_subcarriers));
    for (int nu = 0; nu < cfg.n_subcarriers; ++nu)
    {
        const double f = cfg.subcarrier_hz(nu);
        ch.subcarrier_freqs.push_back(f);
        ch.t.push_back(channel_matrix(ris, amaf, f / cfg.carrier_hz));
    }
    return ch;
}

double psi_from_cell(double phi, double theta)
{
    return std::acos(std::clamp(std::cos(phi) * std::cos(theta), -1.0, 1.0));
}

double cp_overhead(int isi_length, int n_subcarriers)
{
    if (isi_length <= 0)
        return 0.0;
    return static_cast<double>(isi_length) / static_cast<double>(isi_length + n_subcarriers);
}

DelayReport delay_report(const ChannelConfig &cfg, double psi_max)
{
    cfg.validate();
    if (!(psi_max >= 0.0 && psi_max < kPi / 2))
        throw ValidationError("psi", "steering angle must lie in [0, 90) degrees");
    const auto ris = element_positions(cfg.ris());
    const auto amaf = element_positions(cfg.amaf());

    // lambda / (2c) converts half-wavelengths to seconds
    const double unit_s = 1.0 / (2.0 * cfg.carrier_hz);
    const double diagonal = std::hypot(static_cast<double>(cfg.ris_nx), static_cast<double>(cfg.ris_nz));
    const double steering = std::sin(psi_max) * diagonal;

    DelayReport rep;
    rep.psi_rad = psi_max;
    rep.tau_max_s = unit_s * (steering + (ris.front() - amaf.back()).norm());
    rep.tau_min_s = unit_s * (ris.front() - amaf.front()).norm();
    rep.delta_tau_max_s = rep.tau_max_s - rep.tau_min_s;

    double r_lo = std::numeric_limits<double>::infinity();
    double r_hi = 0.0;
    for (const auto &p : ris)
        for (const auto &q : amaf)
        {
            const double r = (p - q).norm();
            r_lo = std::min(r_lo, r);
            r_hi = std::max(r_hi, r);
        }
    rep.delta_tau_brute_force_s = unit_s * (steering + r_hi - r_lo);

    rep.w_narrowband_hz = kNarrowbandProduct / rep.delta_tau_max_s;
    rep.isi_length = static_cast<int>(std::ceil(rep.delta_tau_max_s * cfg.bandwidth_hz));
    rep.cp_overhead = cp_overhead(rep.isi_length, cfg.n_subcarriers);
    return rep;
}

} // namespace amafris
