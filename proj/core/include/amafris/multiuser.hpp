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
#include <span>
#include <vector>

#include "amafris/geometry.hpp"
#include "amafris/nearfield.hpp"
#include "amafris/pem.hpp"
#include "amafris/rng.hpp"

namespace amafris
{

// K identical feeder/RIS modules stacked vertically with a gap of h_sep
// half-wavelengths between RIS panels.
struct StackConfig
{
    int modules = 4;
    double h_sep = 10.0;
    ChannelConfig base;
    GeometryConfig geometry;

    // z offset of module i relative to the stack centroid (half-wavelengths).
    [[nodiscard]] double module_offset(int i) const;
    void validate() const;
};

struct StackedChannel
{
    int modules = 0;
    int ris_size = 0;  // N_p per module
    int amaf_size = 0; // N_a per module
    std::vector<Vec3> ris_positions; // K * N_p, stack-centroid reference
    PemPrecoder pem;                 // designed on an isolated module
    NearFieldChannel isolated;       // T_jj[nu] of a module in isolation
    std::vector<double> subcarrier_freqs;
    // Per subcarrier, (K N_p) x K: column j stacks T_ij[nu] b_j over i.
    std::vector<CMatrix> feed_response;
    CMatrix center_response; // same at f = f0
    // Blocks T_ij(0), index i * K + j.
    std::vector<CMatrix> center_blocks;
    // ||T_ij(0) b_j||^2 / ||T_ii(0) b_i||^2 in dB; diagonal is 0.
    Eigen::MatrixXd crosstalk_db;

    [[nodiscard]] std::span<const Vec3> module_positions(int i) const;
    [[nodiscard]] double max_crosstalk_db() const;
};

StackedChannel build_stack(const StackConfig &cfg);

struct User
{
    GroundPoint ground;
    Direction dir;
    double slant_m = 0.0;
    double pathloss = 0.0; // (lambda / (4 pi d))^2, linear
};

struct UserDrop
{
    std::vector<User> users;
};

User make_user(GroundPoint p, const GeometryConfig &geometry);

// Users with independent uniform ground azimuth in +/-phi_span and ground
// range in [r_min, r_max], redrawn until every pair of ground azimuths is at
// least min_sep apart. Throws std::invalid_argument when k * min_sep does not
// fit in the sector.
UserDrop schedule_drop(const GeometryConfig &geometry, int k, double min_sep, Rng &rng);

// Steers module i toward aim[i] for every module of the stack. Module i uses
// the seed derived from (seed, i) for its pointing error.
std::vector<SteeredProfile> steer_stack(const StackedChannel &st, std::span<const Direction> aim,
                                        const SteerOptions &options);

/// Per-subcarrier K x K channel H[nu] = A^H W T[nu] B between the K feeder
/// ports (columns) and the K users (rows). Column k of A is the patch-weighted
/// steering vector 2 cos(phi_k) cos(theta_k) a(phi_k, theta_k) over the whole
/// stacked aperture. The feed response carries the PEM link scale so a
/// boresight user sees exactly Gamma.
std::vector<CMatrix> effective_channel(const StackedChannel &st, const UserDrop &drop,
                                       std::span<const SteeredProfile> profiles);

// H(0) from the center-frequency feed response.
CMatrix effective_channel_center(const StackedChannel &st, const UserDrop &drop,
                                 std::span<const SteeredProfile> profiles);

struct RateSample
{
    Eigen::MatrixXd sinr; // K x N_F, linear
    RVector rate;         // bits/s/Hz per user
};

/// SINR_k = |H_kk|^2 P / (W N0 / L_k + sum_{j != k} |H_kj|^2 P), rates
/// averaged over subcarriers.
RateSample evaluate_rates(std::span<const CMatrix> h, const UserDrop &drop, double p_amaf_w, double noise_w);

// Per-row margin |H_kk|^2 / max_{j != k} |H_kj|^2 in dB. Infinite for K = 1.
RVector diagonal_margin_db(const CMatrix &h);

} // namespace amafris
