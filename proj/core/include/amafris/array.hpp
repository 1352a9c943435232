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

#include <optional>
#include <span>
#include <vector>

#include "amafris/geometry.hpp"

namespace amafris
{

// Standard rectangular array with half-wavelength spacing. Coordinates are
// in half-wavelength units: x and z along the panel, y along its normal.
struct PlanarArray
{
    int n_x = 1;
    int n_z = 1;
    Vec3 offset = Vec3::Zero();
    double plane_distance = 0.0; // y of the panel (0 for a RIS, F for a feeder)

    [[nodiscard]] int size() const { return n_x * n_z; }
    void validate() const;
};

// Row-major enumeration: m (z index) outer, n (x index) inner, so element
// (n, m) has linear index m * n_x + n.
std::vector<Vec3> element_positions(const PlanarArray &arr);

// Phase profile of a RIS. Phases are wrapped to [-pi, pi); with quant_bits
// set every phase sits on the uniform grid {-pi + 2 pi k / 2^b}.
struct PhaseProfile
{
    RVector phases;
    std::optional<int> quant_bits;

    [[nodiscard]] CVector phasors() const;
};

// Nearest grid point of {-pi + 2 pi k / 2^bits}; ties go to the lower phase.
double quantize_phase(double phase, int bits);
PhaseProfile quantize(const PhaseProfile &w, int bits);

// a_n = exp(-j pi p_n . n(phi, theta)) for each element position.
CVector steering_vector(std::span<const Vec3> positions, Direction d);
CVector steering_vector(const PlanarArray &arr, Direction d);

// Axisymmetric cosine patch pattern 4 cos^2(psi), zero behind the panel.
double patch_gain(Direction d);
double patch_gain_from_cos(double cos_psi);

// Far-field power gain of a RIS with feed-induced amplitudes `u` and phase
// rotations `w`: patch(d) * |sum_n w_n u_n conj(a_n(d))|^2.
// Throws std::invalid_argument on dimension mismatch.
double radiation_pattern(const CVector &u, const CVector &w, std::span<const Vec3> positions, Direction d);
double radiation_pattern(const CVector &u, const PhaseProfile &w, const PlanarArray &arr, Direction d);

// Boresight gain with the phase-unwrapped profile: 4 (sum |u_n|)^2.
double ris_gain(const CVector &u);
// 4 |sum u_n|^2 with w = 1 and no unwrapping.
double ris_gain_raw(const CVector &u);

struct FootprintPixel
{
    double x_m;
    double y_m;
    double gain_dbi;
};

struct FootprintGrid
{
    double spacing_m = 0.5;
    double x_min_m = 0.0, x_max_m = 0.0;
    double y_min_m = 0.0, y_max_m = 0.0;
};

// Bounding box of the cell sector sampled at `spacing_m`.
FootprintGrid cell_grid(const GeometryConfig &cfg, double spacing_m);

// Samples the radiation pattern at each ground pixel's exact direction.
// Pixels are emitted y outer, x inner.
std::vector<FootprintPixel> rasterize_footprint(const CVector &u, const CVector &w,
                                                std::span<const Vec3> positions,
                                                const GeometryConfig &geometry, const FootprintGrid &grid);

// Gain floor reported for directions with zero gain.
inline constexpr double kGainFloorDbi = -300.0;

} // namespace amafris
