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

#include <vector>

#include "amafris/geometry.hpp"
#include "amafris/multiuser.hpp"
#include "amafris/rng.hpp"

namespace amafris
{

struct CodebookRing
{
    double range_m;
    double step_deg;     // azimuth step of the coarse subset
    double max_az_deg;   // largest azimuth of the coarse subset
};

// Rings at 20/30/50/80 m: 25 deg steps to +/-50 deg on the two inner rings,
// 10 deg steps to +/-50 deg on the two outer ones.
std::vector<CodebookRing> default_codebook_rings();

struct Beam
{
    Direction center;
    GroundPoint anchor;
    double ring_range_m = 0.0;
    double azimuth_rad = 0.0;     // ground azimuth of the anchor
    double az_halfwidth_rad = 0.0; // catchment in azimuth
    double range_lo_m = 0.0, range_hi_m = 0.0;
    bool in_subset = false; // part of the coarse subset
};

/// Naive codebook: beams steered to ground anchors on fixed rings. The full
/// codebook refines each ring's azimuth grid to half the subset step within
/// +/-(span - step/4); range bands are bounded by the midpoints between rings
/// and the cell edges. Catchments are half the refined spacing in azimuth.
std::vector<Beam> naive_codebook(const GeometryConfig &geometry,
                                 const std::vector<CodebookRing> &rings = default_codebook_rings());

struct CodebookDrop
{
    std::vector<int> beams; // one beam per user
    UserDrop drop;
};

// Draws k distinct beams whose anchor azimuths are min_sep apart and one user
// per beam, offset uniformly within the catchment (or at the anchor when
// `ideal`).
CodebookDrop codebook_drop(const std::vector<Beam> &codebook, const GeometryConfig &geometry, int k,
                           double min_sep, bool ideal, Rng &rng);

} // namespace amafris
