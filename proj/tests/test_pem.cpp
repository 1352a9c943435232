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
#include "amafris/pem.hpp"
#include "amafris/rng.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace amafris;

namespace
{

// Footprint peak over the cell for a boresight beam at baseband f.
FootprintPixel boresight_peak(double f_over_f0)
{
    const auto &cfg = fixture::config();
    const auto &pem = fixture::pem();
    const auto amaf = element_positions(cfg.channel.amaf());
    const CVector u = pem.link_scale() * (channel_matrix(fixture::ris_positions(), amaf, f_over_f0) * pem.v1);
    const CVector w = steering_phases(pem, fixture::ris_positions(), {}, std::nullopt).phasors();
    // window around the boresight intercept at 26.16 m
    const FootprintGrid grid{0.5, -10.0, 10.0, 16.0, 40.0};
    const auto px = rasterize_footprint(u, w, fixture::ris_positions(), cfg.geometry, grid);
    return *std::max_element(px.begin(), px.end(),
                             [](const auto &a, const auto &b) { return a.gain_dbi < b.gain_dbi; });
}

} // namespace

TEST_CASE("principal singular value agrees with power iteration")
{
    const double ref = oracle::sigma1_power_iteration(fixture::channel().center);
    CHECK(fixture::pem().sigma1 == doctest::Approx(ref).epsilon(1e-10));
    CHECK(fixture::pem().sigma1 == doctest::Approx(1.2).epsilon(0.1 / 1.2));
    // frozen regression of the derived value
    CHECK(fixture::pem().sigma1 == doctest::Approx(1.2069724603).epsilon(1e-9));
}

TEST_CASE("singular vectors are unit norm and consistent")
{
    const auto &p = fixture::pem();
    CHECK(p.v1.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.u1.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((fixture::channel().center.adjoint() * p.u1 - p.sigma1 * p.v1).norm() < 1e-10);
}

TEST_CASE("phase gauge: first largest feeder entry is real positive")
{
    const auto &p = fixture::pem();
    const RVector mag = p.v1.cwiseAbs();
    Eigen::Index ref = 0;
    while (mag[ref] < mag.maxCoeff() * (1.0 - 1e-9))
        ++ref;
    CHECK(p.v1[ref].imag() == 0.0);
    CHECK(p.v1[ref].real() > 0.0);
    // the gauge is reproducible
    const PemPrecoder again = pem_design(fixture::channel().center);
    CHECK((again.v1 - p.v1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("taper statistics of the default design")
{
    const TaperStats t = taper_stats(fixture::pem());
    CHECK(t.amaf_taper_db == doctest::Approx(11.3).epsilon(0.3 / 11.3));
    CHECK(t.ris_taper_db == doctest::Approx(58.9).epsilon(0.5 / 58.9));
    CHECK(t.amaf_max_sq == doctest::Approx(0.154).epsilon(0.005 / 0.154));
    CHECK(to_db(t.ris_max_sq) == doctest::Approx(-13.36).epsilon(0.3 / 13.36));
    CHECK(to_db(t.ris_min_sq) == doctest::Approx(-72.24).epsilon(0.5 / 72.24));
}

TEST_CASE("unwrap makes the RIS excitation real and nonnegative")
{
    const auto &p = fixture::pem();
    const CVector x = p.u1.cwiseProduct(p.unwrap_phasors());
    CHECK(x.imag().cwiseAbs().maxCoeff() < 1e-9);
    CHECK(x.real().minCoeff() >= 0.0);
    const CVector y = p.unwrapped_amplitudes();
    CHECK((y - p.sigma_link() * x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("principal feed maximizes the transferred power")
{
    const auto &t = fixture::channel().center;
    const double s1 = fixture::pem().sigma1;
    Rng rng(21);
    for (int i = 0; i < 200; ++i)
    {
        CVector b(t.cols());
        for (Eigen::Index k = 0; k < b.size(); ++k)
            b[k] = {rng.normal(), rng.normal()};
        b.normalize();
        REQUIRE((t * b).norm() <= s1 + 1e-9);
    }
    CHECK((t * fixture::pem().v1).norm() == doctest::Approx(s1).epsilon(1e-12));
}

TEST_CASE("sigma clamping for link computations")
{
    const auto &p = fixture::pem();
    CHECK(p.sigma_link() == 1.0);
    CHECK(p.link_scale() == doctest::Approx(1.0 / p.sigma1));
}

TEST_CASE("boresight gain: unwrapped PEM profile")
{
    const auto &p = fixture::pem();
    const double gamma = ris_gain(p.sigma_link() * p.u1);
    CHECK(to_db(gamma) == doctest::Approx(25.6).epsilon(0.3 / 25.6));
    // the pattern at boresight with the unwrap phases is the same number
    const CVector u = p.link_scale() * (fixture::channel().center * p.v1);
    const double g0 = radiation_pattern(u, p.unwrap_phasors(), fixture::ris_positions(), {});
    CHECK(g0 == doctest::Approx(gamma).epsilon(1e-12));
    // raw form with w = 1 is also exposed and is smaller
    CHECK(ris_gain_raw(p.sigma1 * p.u1) < gamma);
}

TEST_CASE("boresight pattern is mirror symmetric")
{
    const auto &p = fixture::pem();
    const CVector u = p.sigma_link() * p.u1;
    const CVector w = p.unwrap_phasors();
    const auto &pos = fixture::ris_positions();
    Rng rng(13);
    for (int i = 0; i < 100; ++i)
    {
        const double phi = rng.uniform(-1.4, 1.4), theta = rng.uniform(-1.4, 1.4);
        const double g = radiation_pattern(u, w, pos, {phi, theta});
        const double scale = std::max(g, 1e-30);
        REQUIRE(std::abs(radiation_pattern(u, w, pos, {-phi, theta}) - g) / scale < 1e-9);
        REQUIRE(std::abs(radiation_pattern(u, w, pos, {phi, -theta}) - g) / scale < 1e-9);
    }
}

TEST_CASE("steered gain at the cell edge")
{
    const auto &cfg = fixture::config();
    const auto &p = fixture::pem();
    const double gamma_db = to_db(ris_gain(p.sigma_link() * p.u1));
    const double edge_db = edge_gain_dbi(p, cfg.channel, cfg.geometry);
    CHECK(edge_db == doctest::Approx(18.7).epsilon(0.3 / 18.7));

    // steering invariance: only the patch factor changes
    const Direction edge{deg_to_rad(60.0), deg_to_rad(26.06)};
    const PhaseProfile w = steering_phases(p, fixture::ris_positions(), edge, std::nullopt);
    const double g = to_db(radiation_pattern(p.sigma_link() * p.u1, w.phasors(), fixture::ris_positions(), edge));
    CHECK(g - gamma_db == doctest::Approx(-6.95).epsilon(0.01 / 6.95));
}

TEST_CASE("steered beam peaks at its target")
{
    const auto &p = fixture::pem();
    const auto &pos = fixture::ris_positions();
    const CVector u = p.sigma_link() * p.u1;
    for (const Direction d0 : {Direction{deg_to_rad(30.0), deg_to_rad(10.0)},
                               Direction{deg_to_rad(-45.0), deg_to_rad(-20.0)}})
    {
        const CVector w = steering_phases(p, pos, d0, std::nullopt).phasors();
        const double g0 = radiation_pattern(u, w, pos, d0) / patch_gain(d0);
        for (int i = -20; i <= 20; ++i)
            for (int j = -20; j <= 20; ++j)
            {
                const Direction d{d0.phi + 0.005 * i, d0.theta + 0.005 * j};
                REQUIRE(radiation_pattern(u, w, pos, d) / patch_gain(d) <= g0 * (1.0 + 1e-12));
            }
    }
}

TEST_CASE("beam squint at the band edges stays within one pixel")
{
    const auto &cfg = fixture::config().channel;
    const double half = 0.5 * cfg.bandwidth_hz / cfg.carrier_hz;
    const FootprintPixel c = boresight_peak(0.0);
    for (double f : {-half, half})
    {
        const FootprintPixel e = boresight_peak(f);
        CHECK(std::hypot(e.x_m - c.x_m, e.y_m - c.y_m) < 0.5);
    }
}

TEST_CASE("quantized steering converges to the unquantized gain")
{
    const auto &p = fixture::pem();
    const auto &pos = fixture::ris_positions();
    const CVector u = p.sigma_link() * p.u1;
    for (const Direction d0 : {Direction{}, Direction{deg_to_rad(30.0), deg_to_rad(10.0)},
                               Direction{deg_to_rad(-55.0), deg_to_rad(20.0)}})
    {
        const double g_inf = radiation_pattern(u, steering_phases(p, pos, d0, std::nullopt).phasors(), pos, d0);
        double prev = 0.0;
        for (int b = 1; b <= 8; ++b)
        {
            const double g = radiation_pattern(u, steering_phases(p, pos, d0, b).phasors(), pos, d0);
            CHECK(g >= prev - 1e-6 * g_inf);
            // uniform phase error of half a step costs sinc^2(pi / 2^b) on average
            const double x = kPi / std::pow(2.0, b);
            if (b >= 3)
                CHECK(std::abs(to_db(g) - to_db(g_inf)) < -20.0 * std::log10(std::sin(x) / x) + 0.02);
            prev = g;
        }
    }
}

TEST_CASE("quantization acts on the total phase")
{
    const auto &p = fixture::pem();
    const auto &pos = fixture::ris_positions();
    const Direction d0{0.3, 0.1};
    const PhaseProfile exact = steering_phases(p, pos, d0, std::nullopt);
    const PhaseProfile q = steering_phases(p, pos, d0, 3);
    for (Eigen::Index i = 0; i < q.phases.size(); ++i)
        REQUIRE(q.phases[i] == quantize_phase(exact.phases[i], 3));
}

TEST_CASE("pointing error perturbs only the aimed direction")
{
    const auto &p = fixture::pem();
    const Direction target{0.2, -0.1};
    const SteeredProfile a = steer(p, fixture::channel(), fixture::ris_positions(), target, {std::nullopt, 0.05, 7});
    const SteeredProfile b = steer(p, fixture::channel(), fixture::ris_positions(), target, {std::nullopt, 0.05, 7});
    const SteeredProfile c = steer(p, fixture::channel(), fixture::ris_positions(), target, {std::nullopt, 0.05, 8});
    CHECK(a.target.phi == target.phi);
    CHECK(a.target.theta == target.theta);
    CHECK(a.aimed.phi != target.phi);
    CHECK(a.aimed.phi == b.aimed.phi);
    CHECK(a.aimed.theta == b.aimed.theta);
    CHECK(a.aimed.phi != c.aimed.phi);
    const SteeredProfile z = steer(p, fixture::channel(), fixture::ris_positions(), target, {std::nullopt, 0.0, 7});
    CHECK(z.aimed.phi == target.phi);
    CHECK(z.u_nu.size() == fixture::channel().t.size());
}

TEST_CASE("pointing error statistics")
{
    const double sigma = deg_to_rad(2.5);
    double s1 = 0.0, s2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i)
    {
        const double e = perturb_direction({}, sigma, static_cast<std::uint64_t>(i)).phi;
        s1 += e;
        s2 += e * e;
    }
    CHECK(std::abs(s1 / n) < 4.0 * sigma / std::sqrt(n));
    CHECK(std::sqrt(s2 / n) == doctest::Approx(sigma).epsilon(0.03));
}

TEST_CASE("template amplitudes on the panel grids")
{
    const auto t = template_amplitudes(fixture::pem(), fixture::config().channel);
    CHECK(t.ris.rows() == 16);
    CHECK(t.amaf.cols() == 4);
    // four-fold mirror symmetry of the facing centered panels
    CHECK((t.ris - t.ris.rowwise().reverse()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((t.ris - t.ris.colwise().reverse()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((t.amaf - t.amaf.transpose()).cwiseAbs().maxCoeff() < 1e-9);
    // largest feeder drive sits in the center block
    CHECK(t.amaf(1, 1) == doctest::Approx(t.amaf.maxCoeff()));
}

TEST_CASE("pem_design failures")
{
    CHECK_THROWS_AS(pem_design(CMatrix(0, 0)), ValidationError);
    CMatrix bad = CMatrix::Ones(4, 2);
    bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(pem_design(bad), NumericalError);
}
