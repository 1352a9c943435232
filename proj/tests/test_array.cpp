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

#include "amafris/array.hpp"
#include "amafris/errors.hpp"
#include "amafris/rng.hpp"
#include "oracles.hpp"

using namespace amafris;

TEST_CASE("element_positions: centered singleton")
{
    const auto p = element_positions({1, 1, Vec3::Zero(), 8.0});
    REQUIRE(p.size() == 1);
    CHECK(p[0].isApprox(Vec3(0.0, 8.0, 0.0)));
}

TEST_CASE("element_positions: two elements along x")
{
    const auto p = element_positions({2, 1, Vec3::Zero(), 0.0});
    REQUIRE(p.size() == 2);
    CHECK(p[0].x() == -0.5);
    CHECK(p[1].x() == 0.5);
}

TEST_CASE("element_positions: 16x16 corners")
{
    const auto p = element_positions({16, 16, Vec3::Zero(), 0.0});
    REQUIRE(p.size() == 256);
    CHECK(p[0].isApprox(Vec3(-7.5, 0.0, -7.5)));
    CHECK(p[15].isApprox(Vec3(7.5, 0.0, -7.5)));
    CHECK(p[240].isApprox(Vec3(-7.5, 0.0, 7.5)));
    CHECK(p[255].isApprox(Vec3(7.5, 0.0, 7.5)));
    // enumeration: z index outer, x index inner
    CHECK(p[17].isApprox(Vec3(-6.5, 0.0, -6.5)));
}

TEST_CASE("element_positions: centroid equals the offset")
{
    const Vec3 off(1.25, -3.0, 52.0);
    const auto p = element_positions({5, 3, off, 8.0});
    Vec3 c = Vec3::Zero();
    for (const auto &q : p)
        c += q;
    c /= static_cast<double>(p.size());
    CHECK((c - (off + Vec3(0.0, 8.0, 0.0))).norm() < 1e-12);
    for (std::size_t i = 1; i < p.size(); ++i)
        if (i % 5 != 0)
            CHECK((p[i] - p[i - 1]).norm() == doctest::Approx(1.0));
}

TEST_CASE("element_positions: invalid sizes")
{
    CHECK_THROWS_AS(element_positions({0, 4, Vec3::Zero(), 0.0}), ValidationError);
}

TEST_CASE("steering_vector: boresight on a centered array")
{
    const PlanarArray arr{16, 16, Vec3::Zero(), 0.0};
    const CVector a = steering_vector(arr, {0.0, 0.0});
    CHECK((a - CVector::Ones(256)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("steering_vector: single element is 1")
{
    const PlanarArray arr{1, 1, Vec3::Zero(), 0.0};
    const CVector a = steering_vector(arr, {0.7, -0.3});
    CHECK(std::abs(a[0] - cdouble(1.0, 0.0)) < 1e-15);
}

TEST_CASE("steering_vector: endfire pair has phases of +/- pi/2")
{
    const PlanarArray arr{2, 1, Vec3::Zero(), 0.0};
    const CVector a = steering_vector(arr, {kPi / 2, 0.0});
    CHECK(std::arg(a[0]) == doctest::Approx(kPi / 2));
    CHECK(std::arg(a[1]) == doctest::Approx(-kPi / 2));
}

TEST_CASE("steering_vector: matches the indexed form and is conjugate symmetric")
{
    Rng rng(3);
    const PlanarArray arr{16, 12, Vec3::Zero(), 0.0};
    for (int i = 0; i < 50; ++i)
    {
        const Direction d{rng.uniform(-1.4, 1.4), rng.uniform(-1.4, 1.4)};
        const CVector a = steering_vector(arr, d);
        const CVector ref = oracle::steering(16, 12, d.phi, d.theta);
        REQUIRE((a - ref).cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE((a.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
        REQUIRE((a - a.reverse().conjugate()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("patch_gain")
{
    CHECK(patch_gain({0.0, 0.0}) == 4.0);
    CHECK(to_db(patch_gain({0.0, 0.0})) == doctest::Approx(6.02).epsilon(1e-3));
    CHECK(patch_gain({deg_to_rad(60.0), 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
    const double ref = 4.0 * std::pow(0.5 * std::cos(deg_to_rad(26.06)), 2);
    CHECK(patch_gain({deg_to_rad(60.0), deg_to_rad(26.06)}) == doctest::Approx(ref).epsilon(1e-14));
    CHECK(patch_gain({deg_to_rad(60.0), deg_to_rad(26.06)}) == doctest::Approx(0.8070).epsilon(1e-4));
    CHECK(patch_gain_from_cos(-0.2) == 0.0);
}

TEST_CASE("radiation_pattern: single active element gives the patch pattern")
{
    const PlanarArray arr{4, 4, Vec3::Zero(), 0.0};
    const auto pos = element_positions(arr);
    CVector u = CVector::Zero(16);
    u[5] = 1.0;
    Rng rng(2);
    for (int i = 0; i < 20; ++i)
    {
        CVector w(16);
        for (Eigen::Index k = 0; k < 16; ++k)
            w[k] = std::polar(1.0, rng.uniform(-kPi, kPi));
        const Direction d{rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
        CHECK(radiation_pattern(u, w, pos, d) == doctest::Approx(patch_gain(d)).epsilon(1e-12));
    }
}

TEST_CASE("radiation_pattern: matches the indexed sum")
{
    Rng rng(9);
    const int nx = 6, nz = 5;
    const auto pos = element_positions({nx, nz, Vec3::Zero(), 0.0});
    CVector u(nx * nz), w(nx * nz);
    for (Eigen::Index k = 0; k < u.size(); ++k)
    {
        u[k] = {rng.normal(), rng.normal()};
        w[k] = std::polar(1.0, rng.uniform(-kPi, kPi));
    }
    for (int i = 0; i < 30; ++i)
    {
        const Direction d{rng.uniform(-1.3, 1.3), rng.uniform(-1.3, 1.3)};
        CHECK(radiation_pattern(u, w, pos, d) ==
              doctest::Approx(oracle::pattern(u, w, nx, nz, d.phi, d.theta)).epsilon(1e-10));
    }
}

TEST_CASE("radiation_pattern: steering to d0 puts the maximum at d0")
{
    const PlanarArray arr{8, 8, Vec3::Zero(), 0.0};
    const auto pos = element_positions(arr);
    Rng rng(4);
    CVector u(64);
    for (Eigen::Index k = 0; k < 64; ++k)
        u[k] = rng.uniform(0.2, 1.0);
    const Direction d0{deg_to_rad(25.0), deg_to_rad(-10.0)};
    const CVector w = steering_vector(pos, d0);
    const double g0 = radiation_pattern(u, w, pos, d0);
    CHECK(g0 == doctest::Approx(patch_gain(d0) * std::pow(u.real().sum(), 2)).epsilon(1e-12));
    // array factor peaks at d0; the patch factor only shrinks it off boresight
    for (int i = 0; i < 2000; ++i)
    {
        const Direction d{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
        const double af = radiation_pattern(u, w, pos, d) / std::max(patch_gain(d), 1e-300);
        REQUIRE(af <= g0 / patch_gain(d0) * (1.0 + 1e-12));
    }
}

TEST_CASE("radiation_pattern: dimension mismatch")
{
    const auto pos = element_positions({2, 2, Vec3::Zero(), 0.0});
    CHECK_THROWS_AS(radiation_pattern(CVector::Ones(3), CVector::Ones(4), pos, {}), std::invalid_argument);
}

TEST_CASE("ris_gain")
{
    CHECK(ris_gain(CVector::Ones(256)) == doctest::Approx(4.0 * 256 * 256));
    CHECK(to_db(ris_gain(CVector::Ones(256))) == doctest::Approx(54.2).epsilon(0.05 / 54.2));
    CVector one = CVector::Zero(9);
    one[3] = 1.0;
    CHECK(ris_gain(one) == 4.0);
    // unwrapped gain never falls below the raw coherent sum
    Rng rng(6);
    CVector u(20);
    for (Eigen::Index k = 0; k < 20; ++k)
        u[k] = {rng.normal(), rng.normal()};
    CHECK(ris_gain(u) >= ris_gain_raw(u));
}

TEST_CASE("quantize_phase: lands on the grid within half a step")
{
    Rng rng(8);
    for (int bits = 1; bits <= 6; ++bits)
    {
        const double step = 2.0 * kPi / std::ldexp(1.0, bits);
        for (int i = 0; i < 500; ++i)
        {
            const double p = rng.uniform(-3.0 * kPi, 3.0 * kPi);
            const double q = quantize_phase(p, bits);
            REQUIRE(q >= -kPi);
            REQUIRE(q < kPi);
            const double k = (q + kPi) / step;
            REQUIRE(std::abs(k - std::round(k)) < 1e-9);
            REQUIRE(std::abs(wrap_phase(q - p)) <= kPi / std::ldexp(1.0, bits) + 1e-12);
        }
    }
}

TEST_CASE("quantize_phase: ties go to the lower grid point")
{
    // 2 bits: grid {-pi, -pi/2, 0, pi/2}
    CHECK(quantize_phase(kPi / 4, 2) == doctest::Approx(0.0));
    CHECK(quantize_phase(-kPi / 4, 2) == doctest::Approx(-kPi / 2));
    // wraps past the top of the grid back to -pi
    CHECK(quantize_phase(kPi - 1e-3, 1) == doctest::Approx(-kPi));
    CHECK_THROWS_AS(quantize_phase(0.1, 0), ValidationError);
}

TEST_CASE("quantize keeps the profile size and marks the bit count")
{
    PhaseProfile w{RVector::LinSpaced(10, -3.0, 3.0), std::nullopt};
    const PhaseProfile q = quantize(w, 3);
    CHECK(q.phases.size() == 10);
    REQUIRE(q.quant_bits.has_value());
    CHECK(*q.quant_bits == 3);
}

TEST_CASE("cell_grid and rasterize_footprint layout")
{
    GeometryConfig g;
    g.downtilt_rad = downtilt_from_cell(g);
    const FootprintGrid grid = cell_grid(g, 0.5);
    CHECK(grid.x_max_m == doctest::Approx(86.5));
    CHECK(grid.x_min_m == doctest::Approx(-86.5));
    CHECK(grid.y_max_m == doctest::Approx(100.0));
    const auto pos = element_positions({2, 2, Vec3::Zero(), 0.0});
    FootprintGrid small{10.0, -10.0, 10.0, 0.0, 20.0};
    const auto px = rasterize_footprint(CVector::Ones(4), CVector::Ones(4), pos, g, small);
    REQUIRE(px.size() == 9);
    CHECK(px[0].x_m == -10.0);
    CHECK(px[1].x_m == 0.0);
    CHECK(px[3].y_m == 10.0);
    CHECK_THROWS_AS(cell_grid(g, 0.0), ValidationError);
}
