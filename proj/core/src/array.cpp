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

#include "amafris/array.hpp"

#include <stdexcept>

#include "amafris/errors.hpp"

namespace amafris
{

void PlanarArray::validate() const
{
    if (n_x < 1 || n_z < 1)
        throw ValidationError("array", "element counts must be at least 1");
}

std::vector<Vec3> element_positions(const PlanarArray &arr)
{
    arr.validate();
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(arr.size()));
    for (int m = 0; m < arr.n_z; ++m)
        for (int n = 0; n < arr.n_x; ++n)
            out.emplace_back(Vec3(0.5 * (2 * n - arr.n_x + 1), arr.plane_distance, 0.5 * (2 * m - arr.n_z + 1)) +
                             arr.offset);
    return out;
}

CVector PhaseProfile::phasors() const
{
    CVector w(phases.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        w[i] = std::polar(1.0, phases[i]);
    return w;
}

double quantize_phase(double phase, int bits)
{
    if (bits < 1)
        throw ValidationError("quant_bits", "quantization needs at least one bit");
    const double levels = std::ldexp(1.0, bits);
    const double step = 2.0 * kPi / levels;
    double k = std::ceil((wrap_phase(phase) + kPi) / step - 0.5);
    if (k >= levels)
        k -= levels;
    return -kPi + k * step;
}

PhaseProfile quantize(const PhaseProfile &w, int bits)
{
    PhaseProfile q{w.phases, bits};
    for (Eigen::Index i = 0; i < q.phases.size(); ++i)
        q.phases[i] = quantize_phase(w.phases[i], bits);
    return q;
}

CVector steering_vector(std::span<const Vec3> positions, Direction d)
{
    const Vec3 n = direction_vector(d);
    CVector a(static_cast<Eigen::Index>(positions.size()));
    for (std::size_t i = 0; i < positions.size(); ++i)
        a[static_cast<Eigen::Index>(i)] = std::polar(1.0, -kPi * positions[i].dot(n));
    return a;
}

CVector steering_vector(const PlanarArray &arr, Direction d)
{
    const auto pos = element_positions(arr);
    return steering_vector(pos, d);
}

double patch_gain_from_cos(double cos_psi) { return cos_psi > 0.0 ? 4.0 * cos_psi * cos_psi : 0.0; }

double patch_gain(Direction d) { return patch_gain_from_cos(std::cos(d.phi) * std::cos(d.theta)); }

double radiation_pattern(const CVector &u, const CVector &w, std::span<const Vec3> positions, Direction d)
{
    const auto n = static_cast<Eigen::Index>(positions.size());
    if (u.size() != n || w.size() != n)
        throw std::invalid_argument("radiation_pattern: amplitude, phase and position sizes differ");
    const double g = patch_gain(d);
    if (g == 0.0)
        return 0.0;
    const Vec3 dir = direction_vector(d);
    cdouble acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < n; ++i)
    {
        // conj(a_i) = exp(+j pi p . n)
        acc += w[i] * u[i] * std::polar(1.0, kPi * positions[static_cast<std::size_t>(i)].dot(dir));
    }
    return g * std::norm(acc);
}

double radiation_pattern(const CVector &u, const PhaseProfile &w, const PlanarArray &arr, Direction d)
{
    const auto pos = element_positions(arr);
    return radiation_pattern(u, w.phasors(), pos, d);
}

double ris_gain(const CVector &u)
{
    const double s = u.cwiseAbs().sum();
    return 4.0 * s * s;
}

double ris_gain_raw(const CVector &u) { return 4.0 * std::norm(u.sum()); }

FootprintGrid cell_grid(const GeometryConfig &cfg, double spacing_m)
{
    if (!(spacing_m > 0.0))
        throw ValidationError("footprint_grid_m", "grid spacing must be positive");
    const double half_width = cfg.r_max_m * std::sin(cfg.phi_span_rad);
    const double x_edge = std::floor(half_width / spacing_m) * spacing_m;
    const double y_edge = std::ceil(cfg.r_max_m / spacing_m) * spacing_m;
    return {spacing_m, -x_edge, x_edge, 0.0, y_edge};
}

std::vector<FootprintPixel> rasterize_footprint(const CVector &u, const CVector &w,
                                                std::span<const Vec3> positions,
                                                const GeometryConfig &geometry, const FootprintGrid &grid)
{
    const auto nx = static_cast<long>(std::llround((grid.x_max_m - grid.x_min_m) / grid.spacing_m)) + 1;
    const auto ny = static_cast<long>(std::llround((grid.y_max_m - grid.y_min_m) / grid.spacing_m)) + 1;
    std::vector<FootprintPixel> out;
    out.reserve(static_cast<std::size_t>(nx * ny));
    const CVector wu = w.cwiseProduct(u);
    for (long iy = 0; iy < ny; ++iy)
    {
        const double y = grid.y_min_m + static_cast<double>(iy) * grid.spacing_m;
        for (long ix = 0; ix < nx; ++ix)
        {
            const double x = grid.x_min_m + static_cast<double>(ix) * grid.spacing_m;
            const auto s = ground_to_spherical({x, y}, geometry);
            const double g = radiation_pattern(wu, CVector::Ones(wu.size()), positions, s.dir);
            out.push_back({x, y, g > 0.0 ? to_db(g) : kGainFloorDbi});
        }
    }
    return out;
}

} // namespace amafris
