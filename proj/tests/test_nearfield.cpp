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

#include "amafris/errors.hpp"
#include "amafris/nearfield.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace amafris;

TEST_CASE("channel_matrix: facing single elements")
{
    for (double r : {1.0, 3.5, 8.0, 40.25})
    {
        const std::vector<Vec3> ris{Vec3::Zero()};
        const std::vector<Vec3> amaf{Vec3(0.0, r, 0.0)};
        const cdouble t = channel_matrix(ris, amaf, 0.0)(0, 0);
        CHECK(std::abs(t) == doctest::Approx(4.0 / (2.0 * kPi * r)).epsilon(1e-14));
        CHECK(std::abs(wrap_phase(std::arg(t) + kPi * r)) < 1e-9);
    }
}

TEST_CASE("channel_matrix: coincident elements are rejected")
{
    const std::vector<Vec3> p{Vec3::Zero()};
    CHECK_THROWS_AS(channel_matrix(p, p, 0.0), std::domain_error);
}

TEST_CASE("channel_matrix: matches the indexed coupling form")
{
    const ChannelConfig cfg;
    const auto ris = element_positions(cfg.ris());
    const auto amaf = element_positions(cfg.amaf());
    for (double f : {-0.025, 0.0, 0.01875})
    {
        const CMatrix t = channel_matrix(ris, amaf, f);
        const CMatrix ref = oracle::friis_matrix(16, 16, 4, 4, 8.0, f);
        CHECK((t - ref).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("corner distances of the default design")
{
    const ChannelConfig cfg;
    const auto ris = element_positions(cfg.ris());
    const auto amaf = element_positions(cfg.amaf());
    CHECK((ris.front() - amaf.back()).norm() == doctest::Approx(std::sqrt(226.0)).epsilon(1e-14));
    CHECK((ris.front() - amaf.front()).norm() == doctest::Approx(std::sqrt(136.0)).epsilon(1e-14));
    CHECK(std::sqrt(226.0) == doctest::Approx(15.03).epsilon(1e-3));
    CHECK(std::sqrt(136.0) == doctest::Approx(11.66).epsilon(1e-3));
}

TEST_CASE("build_channel: subcarrier grid and frequency-flat magnitudes")
{
    const auto &ch = fixture::channel();
    const auto &cfg = fixture::config().channel;
    REQUIRE(ch.t.size() == 8);
    for (int nu = 0; nu < 8; ++nu)
        CHECK(ch.subcarrier_freqs[static_cast<std::size_t>(nu)] ==
              doctest::Approx(-2.5e9 + nu * 0.625e9));
    CHECK((ch.t.front().cwiseAbs() - ch.t.back().cwiseAbs()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((ch.center.cwiseAbs() - ch.t[3].cwiseAbs()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(ch.center.cwiseAbs().maxCoeff() < 1.0);
    CHECK(cfg.subcarrier_spacing_hz() == 0.625e9);
}

TEST_CASE("build_channel: passivity of every feeder column")
{
    const auto &ch = fixture::channel();
    for (Eigen::Index l = 0; l < ch.center.cols(); ++l)
        CHECK(ch.center.col(l).squaredNorm() < 1.0);
}

TEST_CASE("build_channel: smooth across subcarriers")
{
    const auto &ch = fixture::channel();
    for (std::size_t nu = 1; nu < ch.t.size(); ++nu)
    {
        // phase step per subcarrier is pi r df / f0 <= pi * 15.1 * 0.00625
        const double rel = (ch.t[nu] - ch.t[nu - 1]).norm() / ch.t[nu].norm();
        CHECK(rel < kPi * 15.1 * 0.00625);
    }
}

TEST_CASE("delay_report: default design at the cell edge")
{
    const auto &cfg = fixture::config();
    const Direction edge = cell_edge_direction(cfg.geometry);
    const double psi = psi_from_cell(edge.phi, edge.theta);
    CHECK(rad_to_deg(psi) == doctest::Approx(63.3).epsilon(0.05 / 63.3));
    const DelayReport r = delay_report(cfg.channel, psi);
    CHECK(r.delta_tau_max_s * 1e12 == doctest::Approx(117.9).epsilon(0.5 / 117.9));
    CHECK(r.w_narrowband_hz / 1e9 == doctest::Approx(1.06).epsilon(0.01 / 1.06));
    CHECK(r.isi_length == 1);
    CHECK(r.cp_overhead == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(r.w_narrowband_hz * r.delta_tau_max_s == doctest::Approx(kNarrowbandProduct));
    CHECK(r.tau_max_s >= r.tau_min_s);
    CHECK(r.tau_min_s >= 0.0);

    // steering delay plus the corner path difference, in half-wavelengths
    const double unit = 1.0 / (2.0 * cfg.channel.carrier_hz);
    const double ref = unit * (std::sin(psi) * std::sqrt(512.0) + std::sqrt(226.0) - std::sqrt(136.0));
    CHECK(r.delta_tau_max_s == doctest::Approx(ref).epsilon(1e-14));
    // the all-pairs spread bounds the corner-pair spread
    CHECK(r.delta_tau_brute_force_s >= r.delta_tau_max_s);
}

TEST_CASE("delay_report: rejects steering beyond the hemisphere")
{
    CHECK_THROWS_AS(delay_report(ChannelConfig{}, kPi / 2), ValidationError);
    CHECK_THROWS_AS(delay_report(ChannelConfig{}, -0.1), ValidationError);
}

TEST_CASE("psi_from_cell")
{
    CHECK(psi_from_cell(0.0, 0.0) == 0.0);
    CHECK(rad_to_deg(psi_from_cell(deg_to_rad(60.0), 0.0)) == doctest::Approx(60.0));
    CHECK(rad_to_deg(psi_from_cell(deg_to_rad(60.0), deg_to_rad(26.06))) ==
          doctest::Approx(63.3).epsilon(0.05 / 63.3));
}

TEST_CASE("cp_overhead")
{
    CHECK(cp_overhead(0, 8) == 0.0);
    CHECK(cp_overhead(1, 8) == doctest::Approx(1.0 / 9.0));
    CHECK(cp_overhead(2, 8) == doctest::Approx(0.2));
}

TEST_CASE("ChannelConfig validation names the key")
{
    const auto key_of = [](ChannelConfig c) {
        try
        {
            c.validate();
        }
        catch (const ValidationError &e)
        {
            return e.key();
        }
        return std::string();
    };
    ChannelConfig c;
    CHECK(key_of(c).empty());
    c.bandwidth_hz = 0.0;
    CHECK(key_of(c) == "bandwidth_ghz");
    c = {};
    c.carrier_hz = 1e9;
    CHECK(key_of(c) == "carrier_ghz");
    c = {};
    c.n_subcarriers = 0;
    CHECK(key_of(c) == "n_subcarriers");
    c = {};
    c.feed_distance = 0.0;
    CHECK(key_of(c) == "feed_distance");
}
