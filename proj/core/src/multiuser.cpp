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

#include "amafris/multiuser.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "amafris/errors.hpp"

namespace amafris
{

namespace
{

constexpr long kMaxScheduleAttempts = 1000000;

// Column k: 2 cos(phi_k) cos(theta_k) a(phi_k, theta_k) over the stack.
CMatrix user_steering(const StackedChannel &st, const UserDrop &drop)
{
    const auto k = static_cast<Eigen::Index>(drop.users.size());
    CMatrix a(static_cast<Eigen::Index>(st.ris_positions.size()), k);
    for (Eigen::Index c = 0; c < k; ++c)
    {
        const Direction d = drop.users[static_cast<std::size_t>(c)].dir;
        a.col(c) = std::sqrt(patch_gain(d)) * steering_vector(st.ris_positions, d);
    }
    return a;
}

CVector stacked_phasors(const StackedChannel &st, std::span<const SteeredProfile> profiles)
{
    if (static_cast<int>(profiles.size()) != st.modules)
        throw std::invalid_argument("effective_channel: need one steered profile per module");
    CVector w(static_cast<Eigen::Index>(st.modules) * st.ris_size);
    for (int i = 0; i < st.modules; ++i)
    {
        const auto &ph = profiles[static_cast<std::size_t>(i)].w.phases;
        if (ph.size() != st.ris_size)
            throw std::invalid_argument("effective_channel: profile size does not match the RIS");
        for (Eigen::Index n = 0; n < ph.size(); ++n)
            w[i * st.ris_size + n] = std::polar(1.0, ph[n]);
    }
    return w;
}

CMatrix project(const CMatrix &a, const CVector &w, const CMatrix &response, double scale)
{
    return scale * (a.adjoint() * (w.asDiagonal() * response));
}

} // namespace

double StackConfig::module_offset(int i) const
{
    return (static_cast<double>(i) - 0.5 * static_cast<double>(modules - 1)) *
           (static_cast<double>(base.ris_nz) + h_sep);
}

void StackConfig::validate() const
{
    if (modules < 1)
        throw ValidationError("modules", "need at least one module");
    if (!(h_sep >= 0.0))
        throw ValidationError("h_sep", "module gap must be nonnegative");
    base.validate();
    geometry.validate();
}

std::span<const Vec3> StackedChannel::module_positions(int i) const
{
    if (i < 0 || i >= modules)
        throw std::out_of_range("module_positions: module index out of range");
    return std::span<const Vec3>(ris_positions).subspan(static_cast<std::size_t>(i) * ris_size,
                                                         static_cast<std::size_t>(ris_size));
}

double StackedChannel::max_crosstalk_db() const
{
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < modules; ++i)
        for (int j = 0; j < modules; ++j)
            if (i != j)
                worst = std::max(worst, crosstalk_db(i, j));
    return worst;
}

StackedChannel build_stack(const StackConfig &cfg)
{
    cfg.validate();
    const int k = cfg.modules;
    StackedChannel st;
    st.modules = k;
    st.ris_size = cfg.base.ris_nx * cfg.base.ris_nz;
    st.amaf_size = cfg.base.amaf_nh * cfg.base.amaf_nv;
    st.isolated = build_channel(cfg.base);
    st.pem = pem_design(st.isolated);
    st.subcarrier_freqs = st.isolated.subcarrier_freqs;

    std::vector<std::vector<Vec3>> ris(static_cast<std::size_t>(k));
    std::vector<std::vector<Vec3>> amaf(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
    {
        ris[static_cast<std::size_t>(i)] = element_positions(cfg.base.ris(cfg.module_offset(i)));
        amaf[static_cast<std::size_t>(i)] = element_positions(cfg.base.amaf(cfg.module_offset(i)));
        st.ris_positions.insert(st.ris_positions.end(), ris[static_cast<std::size_t>(i)].begin(),
                                ris[static_cast<std::size_t>(i)].end());
    }

    const Eigen::Index rows = static_cast<Eigen::Index>(k) * st.ris_size;
    const auto fill = [&](double f_over_f0, std::vector<CMatrix> *blocks) {
        CMatrix resp(rows, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
            {
                const CMatrix t =
                    channel_matrix(ris[static_cast<std::size_t>(i)], amaf[static_cast<std::size_t>(j)], f_over_f0);
                resp.block(static_cast<Eigen::Index>(i) * st.ris_size, j, st.ris_size, 1) = t * st.pem.v1;
                if (blocks != nullptr)
                    blocks->push_back(t);
            }
        return resp;
    };

    st.center_response = fill(0.0, &st.center_blocks);
    for (double f : st.subcarrier_freqs)
        st.feed_response.push_back(fill(f / cfg.base.carrier_hz, nullptr));

    st.crosstalk_db = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i)
    {
        const double own = st.center_response.block(static_cast<Eigen::Index>(i) * st.ris_size, i, st.ris_size, 1)
                               .squaredNorm();
        for (int j = 0; j < k; ++j)
            if (i != j)
                st.crosstalk_db(i, j) = to_db(
                    st.center_response.block(static_cast<Eigen::Index>(i) * st.ris_size, j, st.ris_size, 1)
                        .squaredNorm() /
                    own);
    }
    return st;
}

User make_user(GroundPoint p, const GeometryConfig &geometry)
{
    const SphericalS2 s = ground_to_spherical(p, geometry);
    const double amp = geometry.wavelength_m / (4.0 * kPi * s.rho);
    return {p, s.dir, s.rho, amp * amp};
}

UserDrop schedule_drop(const GeometryConfig &geometry, int k, double min_sep, Rng &rng)
{
    if (k < 1)
        throw ValidationError("users", "need at least one user");
    const double span = 2.0 * geometry.phi_span_rad;
    if (k > 1 && !(static_cast<double>(k) * min_sep < span))
        throw ValidationError("min_sep_deg", "users cannot be separated by the requested azimuth in the sector");

    std::vector<double> az(static_cast<std::size_t>(k));
    for (long attempt = 0;; ++attempt)
    {
        if (attempt == kMaxScheduleAttempts)
            throw ValidationError("min_sep_deg", "no separated user set found by rejection sampling");
        for (auto &a : az)
            a = rng.uniform(-geometry.phi_span_rad, geometry.phi_span_rad);
        bool ok = true;
        for (std::size_t i = 0; i < az.size() && ok; ++i)
            for (std::size_t j = i + 1; j < az.size() && ok; ++j)
                ok = std::abs(az[i] - az[j]) >= min_sep;
        if (ok)
            break;
    }

    UserDrop drop;
    for (double a : az)
    {
        const double r = rng.uniform(geometry.r_min_m, geometry.r_max_m);
        drop.users.push_back(make_user(ground_from_polar(r, a), geometry));
    }
    return drop;
}

std::vector<SteeredProfile> steer_stack(const StackedChannel &st, std::span<const Direction> aim,
                                        const SteerOptions &options)
{
    if (static_cast<int>(aim.size()) != st.modules)
        throw std::invalid_argument("steer_stack: need one direction per module");
    std::vector<SteeredProfile> out;
    out.reserve(aim.size());
    for (int i = 0; i < st.modules; ++i)
    {
        SteerOptions o = options;
        o.seed = mix_seed(options.seed, static_cast<std::uint64_t>(i));
        out.push_back(steer(st.pem, st.isolated, st.module_positions(i), aim[static_cast<std::size_t>(i)], o));
    }
    return out;
}

std::vector<CMatrix> effective_channel(const StackedChannel &st, const UserDrop &drop,
                                       std::span<const SteeredProfile> profiles)
{
    if (static_cast<int>(drop.users.size()) != st.modules)
        throw std::invalid_argument("effective_channel: need one user per module");
    const CVector w = stacked_phasors(st, profiles);
    const CMatrix a = user_steering(st, drop);
    std::vector<CMatrix> h;
    h.reserve(st.feed_response.size());
    for (const auto &resp : st.feed_response)
        h.push_back(project(a, w, resp, st.pem.link_scale()));
    return h;
}

CMatrix effective_channel_center(const StackedChannel &st, const UserDrop &drop,
                                 std::span<const SteeredProfile> profiles)
{
    if (static_cast<int>(drop.users.size()) != st.modules)
        throw std::invalid_argument("effective_channel: need one user per module");
    return project(user_steering(st, drop), stacked_phasors(st, profiles), st.center_response,
                   st.pem.link_scale());
}

RateSample evaluate_rates(std::span<const CMatrix> h, const UserDrop &drop, double p_amaf_w, double noise_w)
{
    const auto k = static_cast<Eigen::Index>(drop.users.size());
    const auto nf = static_cast<Eigen::Index>(h.size());
    if (nf == 0)
        throw std::invalid_argument("evaluate_rates: no subcarriers");
    RateSample out;
    out.sinr.resize(k, nf);
    out.rate = RVector::Zero(k);
    for (Eigen::Index nu = 0; nu < nf; ++nu)
    {
        const CMatrix &hn = h[static_cast<std::size_t>(nu)];
        if (hn.rows() != k || hn.cols() != k)
            throw std::invalid_argument("evaluate_rates: channel is not K x K");
        for (Eigen::Index r = 0; r < k; ++r)
        {
            double interference = 0.0;
            for (Eigen::Index c = 0; c < k; ++c)
                if (c != r)
                    interference += std::norm(hn(r, c)) * p_amaf_w;
            const double noise = noise_w / drop.users[static_cast<std::size_t>(r)].pathloss;
            out.sinr(r, nu) = std::norm(hn(r, r)) * p_amaf_w / (noise + interference);
            out.rate[r] += std::log2(1.0 + out.sinr(r, nu));
        }
    }
    out.rate /= static_cast<double>(nf);
    return out;
}

RVector diagonal_margin_db(const CMatrix &h)
{
    RVector m(h.rows());
    for (Eigen::Index r = 0; r < h.rows(); ++r)
    {
        double worst = 0.0;
        for (Eigen::Index c = 0; c < h.cols(); ++c)
            if (c != r)
                worst = std::max(worst, std::norm(h(r, c)));
        m[r] = worst > 0.0 ? to_db(std::norm(h(r, r)) / worst) : std::numeric_limits<double>::infinity();
    }
    return m;
}

} // namespace amafris
