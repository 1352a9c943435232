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

#include "amafris/pem.hpp"

#include <algorithm>

#include "amafris/errors.hpp"
#include "amafris/rng.hpp"

namespace amafris
{

double PemPrecoder::sigma_link() const { return std::min(1.0, sigma1); }

double PemPrecoder::link_scale() const { return sigma_link() / sigma1; }

CVector PemPrecoder::unwrapped_amplitudes() const
{
    return (sigma_link() * u1.cwiseAbs()).cast<cdouble>();
}

CVector PemPrecoder::unwrap_phasors() const
{
    CVector p(unwrap.size());
    for (Eigen::Index i = 0; i < unwrap.size(); ++i)
        p[i] = std::polar(1.0, unwrap[i]);
    return p;
}

PemPrecoder pem_design(const CMatrix &t_center)
{
    if (t_center.rows() == 0 || t_center.cols() == 0)
        throw ValidationError("channel", "empty near-field matrix");
    if (!t_center.allFinite())
        throw NumericalError("pem_design: near-field matrix has non-finite entries");

    Eigen::JacobiSVD<CMatrix, Eigen::ColPivHouseholderQRPreconditioner> svd(t_center, Eigen::ComputeThinV);
    const RVector &s = svd.singularValues();
    if (s.size() == 0 || !std::isfinite(s[0]) || !(s[0] > 0.0) || !svd.matrixV().allFinite())
        throw NumericalError("pem_design: SVD of the near-field matrix failed");

    PemPrecoder pem;
    pem.sigma1 = s[0];
    pem.v1 = svd.matrixV().col(0);

    // Reference entry: first one within 1e-9 of the largest magnitude, so
    // symmetric profiles with numerically tied maxima pick a stable index.
    const RVector mag = pem.v1.cwiseAbs();
    const double peak = mag.maxCoeff();
    Eigen::Index ref = 0;
    while (mag[ref] < peak * (1.0 - 1e-9))
        ++ref;
    pem.v1 *= std::conj(pem.v1[ref]) / mag[ref];
    pem.v1[ref] = mag[ref];
    pem.v1.normalize();

    pem.u1 = t_center * pem.v1 / pem.sigma1;
    pem.unwrap.resize(pem.u1.size());
    for (Eigen::Index i = 0; i < pem.u1.size(); ++i)
        pem.unwrap[i] = -std::arg(pem.u1[i]);
    return pem;
}

PemPrecoder pem_design(const NearFieldChannel &ch) { return pem_design(ch.center); }

TaperStats taper_stats(const PemPrecoder &pem)
{
    const RVector v2 = pem.v1.cwiseAbs2();
    const RVector u2 = pem.u1.cwiseAbs2();
    TaperStats t;
    t.amaf_max_sq = v2.maxCoeff();
    t.amaf_min_sq = v2.minCoeff();
    t.ris_max_sq = u2.maxCoeff();
    t.ris_min_sq = u2.minCoeff();
    t.amaf_taper_db = to_db(t.amaf_max_sq / t.amaf_min_sq);
    t.ris_taper_db = to_db(t.ris_max_sq / t.ris_min_sq);
    return t;
}

TemplateAmplitudes template_amplitudes(const PemPrecoder &pem, const ChannelConfig &cfg)
{
    if (pem.u1.size() != cfg.ris_nx * cfg.ris_nz || pem.v1.size() != cfg.amaf_nh * cfg.amaf_nv)
        throw std::invalid_argument("template_amplitudes: precoder does not match the array sizes");
    TemplateAmplitudes out;
    out.ris.resize(cfg.ris_nz, cfg.ris_nx);
    for (int m = 0; m < cfg.ris_nz; ++m)
        for (int n = 0; n < cfg.ris_nx; ++n)
            out.ris(m, n) = std::abs(pem.u1[m * cfg.ris_nx + n]);
    out.amaf.resize(cfg.amaf_nv, cfg.amaf_nh);
    for (int k = 0; k < cfg.amaf_nv; ++k)
        for (int g = 0; g < cfg.amaf_nh; ++g)
            out.amaf(k, g) = std::abs(pem.v1[k * cfg.amaf_nh + g]);
    return out;
}

PhaseProfile steering_phases(const PemPrecoder &pem, std::span<const Vec3> ris_positions, Direction aimed,
                             std::optional<int> quant_bits)
{
    if (static_cast<Eigen::Index>(ris_positions.size()) != pem.unwrap.size())
        throw std::invalid_argument("steering_phases: position count does not match the precoder");
    const Vec3 n = direction_vector(aimed);
    PhaseProfile w;
    w.phases.resize(pem.unwrap.size());
    for (Eigen::Index i = 0; i < w.phases.size(); ++i)
        w.phases[i] = wrap_phase(pem.unwrap[i] - kPi * ris_positions[static_cast<std::size_t>(i)].dot(n));
    if (quant_bits)
        return quantize(w, *quant_bits);
    return w;
}

Direction perturb_direction(Direction target, double sigma_rad, std::uint64_t seed)
{
    if (sigma_rad <= 0.0)
        return target;
    Rng rng(seed);
    const double e_phi = rng.normal(0.0, sigma_rad);
    const double e_theta = rng.normal(0.0, sigma_rad);
    return {target.phi + e_phi, target.theta + e_theta};
}

SteeredProfile steer(const PemPrecoder &pem, const NearFieldChannel &ch, std::span<const Vec3> ris_positions,
                     Direction target, const SteerOptions &options)
{
    SteeredProfile out;
    out.target = target;
    out.aimed = perturb_direction(target, options.pointing_sigma_rad, options.seed);
    out.w = steering_phases(pem, ris_positions, out.aimed, options.quant_bits);
    out.u_center = ch.center * pem.v1;
    out.u_nu.reserve(ch.t.size());
    for (const auto &t : ch.t)
        out.u_nu.push_back(t * pem.v1);
    return out;
}

} // namespace amafris
