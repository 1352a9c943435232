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

#include "amafris/codebook.hpp"

#include <algorithm>
#include <cmath>

#include "amafris/errors.hpp"

namespace amafris
{

namespace
{
constexpr long kMaxDrawAttempts = 1000000;
}

std::vector<CodebookRing> default_codebook_rings()
{
    return {{20.0, 25.0, 50.0}, {30.0, 25.0, 50.0}, {50.0, 10.0, 50.0}, {80.0, 10.0, 50.0}};
}

std::vector<Beam> naive_codebook(const GeometryConfig &geometry, const std::vector<CodebookRing> &rings)
{
    geometry.validate();
    if (rings.empty())
        throw ValidationError("codebook", "need at least one ring");
    for (std::size_t i = 0; i < rings.size(); ++i)
    {
        if (!(rings[i].step_deg > 0.0) || !(rings[i].max_az_deg >= 0.0))
            throw ValidationError("codebook", "ring steps must be positive");
        if (rings[i].range_m < geometry.r_min_m || rings[i].range_m > geometry.r_max_m ||
            (i > 0 && !(rings[i].range_m > rings[i - 1].range_m)))
            throw ValidationError("codebook", "rings must be increasing and inside the cell");
    }

    const double span_deg = rad_to_deg(geometry.phi_span_rad);
    std::vector<Beam> out;
    for (std::size_t i = 0; i < rings.size(); ++i)
    {
        const auto &ring = rings[i];
        const double lo = i == 0 ? geometry.r_min_m : 0.5 * (rings[i - 1].range_m + ring.range_m);
        const double hi = i + 1 == rings.size() ? geometry.r_max_m : 0.5 * (ring.range_m + rings[i + 1].range_m);
        const double fine = 0.5 * ring.step_deg;
        const auto steps = static_cast<int>(std::floor((span_deg - 0.25 * ring.step_deg) / fine + 1e-9));
        for (int s = -steps; s <= steps; ++s)
        {
            const double az_deg = s * fine;
            Beam b;
            b.anchor = ground_from_polar(ring.range_m, deg_to_rad(az_deg));
            b.center = ground_to_spherical(b.anchor, geometry).dir;
            b.ring_range_m = ring.range_m;
            b.azimuth_rad = deg_to_rad(az_deg);
            b.az_halfwidth_rad = deg_to_rad(0.5 * fine);
            b.range_lo_m = lo;
            b.range_hi_m = hi;
            b.in_subset = s % 2 == 0 && std::abs(az_deg) <= ring.max_az_deg + 1e-9;
            out.push_back(b);
        }
    }
    return out;
}

CodebookDrop codebook_drop(const std::vector<Beam> &codebook, const GeometryConfig &geometry, int k,
                           double min_sep, bool ideal, Rng &rng)
{
    if (k < 1 || static_cast<std::size_t>(k) > codebook.size())
        throw ValidationError("users", "user count must lie between 1 and the codebook size");
    if (k > 1 && !(static_cast<double>(k) * min_sep < 2.0 * geometry.phi_span_rad))
        throw ValidationError("min_sep_deg", "users cannot be separated by the requested azimuth in the sector");

    CodebookDrop out;
    out.beams.resize(static_cast<std::size_t>(k));
    for (long attempt = 0;; ++attempt)
    {
        if (attempt == kMaxDrawAttempts)
            throw ValidationError("min_sep_deg", "no separated beam set found by rejection sampling");
        for (auto &b : out.beams)
            b = static_cast<int>(rng.below(codebook.size()));
        bool ok = true;
        for (std::size_t i = 0; i < out.beams.size() && ok; ++i)
            for (std::size_t j = i + 1; j < out.beams.size() && ok; ++j)
                ok = out.beams[i] != out.beams[j] &&
                     std::abs(codebook[static_cast<std::size_t>(out.beams[i])].azimuth_rad -
                              codebook[static_cast<std::size_t>(out.beams[j])].azimuth_rad) >= min_sep;
        if (ok)
            break;
    }

    for (int idx : out.beams)
    {
        const Beam &b = codebook[static_cast<std::size_t>(idx)];
        GroundPoint p = b.anchor;
        if (!ideal)
        {
            const double az = b.azimuth_rad + rng.uniform(-b.az_halfwidth_rad, b.az_halfwidth_rad);
            const double r = rng.uniform(b.range_lo_m, b.range_hi_m);
            p = ground_from_polar(r, std::clamp(az, -geometry.phi_span_rad, geometry.phi_span_rad));
        }
        out.drop.users.push_back(make_user(p, geometry));
    }
    return out;
}

} // namespace amafris
