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
#include <optional>
#include <span>
#include <vector>

#include "amafris/array.hpp"
#include "amafris/nearfield.hpp"

namespace amafris
{

/// Principal eigenmode (PEM) feed design.
///
/// The feeder is driven with the principal right singular vector v1 of the
/// center-frequency matrix T(0), and every RIS element cancels the phase of
/// the induced amplitude u1 so that the excitation becomes real and
/// positive. The global phase of the SVD is fixed by making the first
/// largest-magnitude entry of v1 real positive.
struct PemPrecoder
{
    double sigma1 = 0.0; // raw principal singular value
    CVector v1;          // feeder excitation, unit norm
    CVector u1;          // induced RIS amplitude direction, unit norm
    RVector unwrap;      // -arg(u1), radians

    /// Singular value used for gains and link budgets. A passive structure
    /// cannot have power gain, so this is min(1, sigma1).
    [[nodiscard]] double sigma_link() const;
    /// Factor that maps T v1 onto sigma_link() * u1.
    [[nodiscard]] double link_scale() const;
    /// sigma_link() * u1 phase-rotated by unwrap: real, nonnegative.
    [[nodiscard]] CVector unwrapped_amplitudes() const;
    [[nodiscard]] CVector unwrap_phasors() const;
};

// Throws std::runtime_error if the SVD fails.
PemPrecoder pem_design(const CMatrix &t_center);
PemPrecoder pem_design(const NearFieldChannel &ch);

struct TaperStats
{
    double amaf_taper_db = 0.0; // max|v1|^2 / min|v1|^2
    double ris_taper_db = 0.0;  // max|u1|^2 / min|u1|^2
    double amaf_max_sq = 0.0;   // Omega_amaf, linear
    double amaf_min_sq = 0.0;
    double ris_max_sq = 0.0; // Omega_ris, linear
    double ris_min_sq = 0.0;
};

TaperStats taper_stats(const PemPrecoder &pem);

// |u1| on the RIS grid (n_z rows x n_x columns) and |v1| on the feeder grid.
struct TemplateAmplitudes
{
    Eigen::MatrixXd ris;
    Eigen::MatrixXd amaf;
};

TemplateAmplitudes template_amplitudes(const PemPrecoder &pem, const ChannelConfig &cfg);

struct SteerOptions
{
    std::optional<int> quant_bits;
    double pointing_sigma_rad = 0.0;
    std::uint64_t seed = 0;
};

struct SteeredProfile
{
    Direction target;
    Direction aimed; // target plus the pointing error
    PhaseProfile w;
    std::vector<CVector> u_nu; // T[nu] v1 per subcarrier, raw
    CVector u_center;          // T(0) v1, raw
};

/// Steers the template beam toward `target`: w = quantize(unwrap + arg a(aimed)),
/// where `aimed` adds independent Gaussian errors to phi and theta. The
/// quantizer acts on the total phase of each element.
SteeredProfile steer(const PemPrecoder &pem, const NearFieldChannel &ch, std::span<const Vec3> ris_positions,
                     Direction target, const SteerOptions &options = {});

/// Phase profile only, for callers that keep their own amplitudes.
PhaseProfile steering_phases(const PemPrecoder &pem, std::span<const Vec3> ris_positions, Direction aimed,
                             std::optional<int> quant_bits);

// Draws the aimed direction for a target under Gaussian pointing error.
Direction perturb_direction(Direction target, double sigma_rad, std::uint64_t seed);

} // namespace amafris
