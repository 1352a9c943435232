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

#include <doctest.h>

#include <map>
#include <set>

#include "amafris/codebook.hpp"
#include "amafris/errors.hpp"
#include "fixtures.hpp"

using namespace amafris;

TEST_CASE("coarse subset: 5 + 5 + 11 + 11 beams")
{
    const auto cb = naive_codebook(fixture::config().geometry);
    std::map<double, int> per_ring;
    for (const auto &b : cb)
        if (b.in_subset)
            ++per_ring[b.ring_range_m];
    CHECK(per_ring[20.0] == 5);
    CHECK(per_ring[30.0] == 5);
    CHECK(per_ring[50.0] == 11);
    CHECK(per_ring[80.0] == 11);
    int total = 0;
    for (const auto &[r, n] : per_ring)
        total += n;
    CHECK(total == 32);
}

TEST_CASE("coarse subset azimuths")
{
    const auto cb = naive_codebook(fixture::config().geometry);
    std::set<long> inner, outer;
    for (const auto &b : cb)
        if (b.in_subset)
            (b.ring_range_m < 40.0 ? inner : outer).insert(std::lround(rad_to_deg(b.azimuth_rad)));
    CHECK(inner == std::set<long>{-50, -25, 0, 25, 50});
    CHECK(outer == std::set<long>{-50, -40, -30, -20, -10, 0, 10, 20, 30, 40, 50});
}

TEST_CASE("full codebook fills the gaps at half the subset step")
{
    const auto cb = naive_codebook(fixture::config().geometry);
    std::map<double, std::vector<double>> az;
    for (const auto &b : cb)
        az[b.ring_range_m].push_back(rad_to_deg(b.azimuth_rad));
    CHECK(az[20.0].size() == 9);
    CHECK(az[80.0].size() == 23);
    for (auto &[r, v] : az)
    {
        std::sort(v.begin(), v.end());
        for (std::size_t i = 1; i < v.size(); ++i)
            CHECK(v[i] - v[i - 1] == doctest::Approx(r < 40.0 ? 12.5 : 5.0));
        CHECK(v.back() <= 60.0);
    }
}

TEST_CASE("beam centers map back to their anchors")
{
    const auto &g = fixture::config().geometry;
    for (const auto &b : naive_codebook(g))
    {
        const GroundPoint p = direction_to_ground(b.center, g);
        REQUIRE(std::hypot(p.x - b.anchor.x, p.y - b.anchor.y) < 1e-9);
        REQUIRE(in_cell(b.anchor, g));
    }
}

TEST_CASE("catchments tile each ring without overlap")
{
    const auto &g = fixture::config().geometry;
    const auto cb = naive_codebook(g);
    for (std::size_t i = 1; i < cb.size(); ++i)
        if (cb[i].ring_range_m == cb[i - 1].ring_range_m)
            CHECK(cb[i].azimuth_rad - cb[i - 1].azimuth_rad ==
                  doctest::Approx(cb[i].az_halfwidth_rad + cb[i - 1].az_halfwidth_rad));
    // range bands meet at the ring midpoints and cover the cell
    CHECK(cb.front().range_lo_m == g.r_min_m);
    CHECK(cb.back().range_hi_m == g.r_max_m);
    for (const auto &b : cb)
        CHECK(b.range_lo_m < b.ring_range_m);
}

TEST_CASE("codebook_drop: distinct separated beams and users in their catchment")
{
    const auto &g = fixture::config().geometry;
    const auto cb = naive_codebook(g);
    Rng rng(41);
    for (int i = 0; i < 300; ++i)
    {
        const CodebookDrop d = codebook_drop(cb, g, 4, deg_to_rad(15.0), false, rng);
        REQUIRE(d.beams.size() == 4);
        for (std::size_t a = 0; a < 4; ++a)
        {
            const Beam &b = cb[static_cast<std::size_t>(d.beams[a])];
            const User &u = d.drop.users[a];
            REQUIRE(in_cell(u.ground, g));
            REQUIRE(std::abs(ground_azimuth(u.ground) - b.azimuth_rad) <= b.az_halfwidth_rad + 1e-12);
            REQUIRE(ground_range(u.ground) >= b.range_lo_m - 1e-12);
            REQUIRE(ground_range(u.ground) <= b.range_hi_m + 1e-12);
            for (std::size_t c = a + 1; c < 4; ++c)
            {
                REQUIRE(d.beams[a] != d.beams[c]);
                REQUIRE(std::abs(b.azimuth_rad - cb[static_cast<std::size_t>(d.beams[c])].azimuth_rad) >=
                        deg_to_rad(15.0) - 1e-12);
            }
        }
    }
}

TEST_CASE("codebook_drop: ideal users sit on the anchors")
{
    const auto &g = fixture::config().geometry;
    const auto cb = naive_codebook(g);
    Rng rng(43);
    const CodebookDrop d = codebook_drop(cb, g, 3, deg_to_rad(15.0), true, rng);
    for (std::size_t a = 0; a < 3; ++a)
    {
        const Beam &b = cb[static_cast<std::size_t>(d.beams[a])];
        CHECK(d.drop.users[a].ground.x == b.anchor.x);
        CHECK(d.drop.users[a].ground.y == b.anchor.y);
    }
}

TEST_CASE("codebook validation")
{
    const auto &g = fixture::config().geometry;
    CHECK_THROWS_AS(naive_codebook(g, {}), ValidationError);
    CHECK_THROWS_AS(naive_codebook(g, {{200.0, 10.0, 50.0}}), ValidationError);
    CHECK_THROWS_AS(naive_codebook(g, {{50.0, 10.0, 50.0}, {30.0, 10.0, 50.0}}), ValidationError);
    Rng rng(1);
    CHECK_THROWS_AS(codebook_drop(naive_codebook(g), g, 9, deg_to_rad(15.0), false, rng), ValidationError);
}
