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

#include "amafris/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "amafris/errors.hpp"

namespace amafris
{

namespace
{
constexpr double kCellSlack = 1e-12;
}

void GeometryConfig::validate() const
{
    if (!(height_m > 0.0))
        throw ValidationError("h_m", "RIS height must be positive");
    if (!(downtilt_rad > 0.0 && downtilt_rad < kPi / 2))
        throw ValidationError("alpha_deg", "downtilt must lie in (0, 90) degrees");
    if (!(r_min_m > 0.0))
        throw ValidationError("r_min_m", "minimum range must be positive");
    if (!(r_max_m > r_min_m))
        throw ValidationError("r_max_m", "maximum range must exceed the minimum range");
    if (!(phi_span_rad > 0.0 && phi_span_rad <= kPi / 2))
        throw ValidationError("phi_span_deg", "azimuth half-span must lie in (0, 90] degrees");
    if (!(wavelength_m > 0.0))
        throw ValidationError("carrier_ghz", "wavelength must be positive");
}

Eigen::Matrix3d rotation_s1_to_s2(double alpha)
{
    const double c = std::cos(alpha), s = std::sin(alpha);
    Eigen::Matrix3d r;
    r << 1.0, 0.0, 0.0, //
        0.0, c, -s,     //
        0.0, s, c;
    return r;
}

Vec3 s1_to_s2(const Vec3 &p, const GeometryConfig &cfg)
{
    return rotation_s1_to_s2(cfg.downtilt_rad) * (p - Vec3(0.0, 0.0, cfg.height_m));
}

Vec3 s2_to_s1(const Vec3 &p, const GeometryConfig &cfg)
{
    return rotation_s1_to_s2(cfg.downtilt_rad).transpose() * p + Vec3(0.0, 0.0, cfg.height_m);
}

Vec3 direction_vector(Direction d)
{
    const double ct = std::cos(d.theta);
    return {std::sin(d.phi) * ct, std::cos(d.phi) * ct, std::sin(d.theta)};
}

Vec3 spherical_to_cartesian(const SphericalS2 &s) { return s.rho * direction_vector(s.dir); }

SphericalS2 cartesian_to_spherical(const Vec3 &p)
{
    const double rho = p.norm();
    if (!(rho > 0.0))
        throw std::domain_error("cartesian_to_spherical: point at the RIS center");
    const double z = std::clamp(p.z() / rho, -1.0, 1.0);
    return {rho, {std::atan2(p.x(), p.y()), std::asin(z)}};
}

SphericalS2 ground_to_spherical(GroundPoint p, const GeometryConfig &cfg)
{
    return cartesian_to_spherical(s1_to_s2(Vec3(p.x, p.y, 0.0), cfg));
}

GroundPoint direction_to_ground(Direction d, const GeometryConfig &cfg)
{
    // S1 ray from (0, 0, h) along R^T n
    const Vec3 n1 = rotation_s1_to_s2(cfg.downtilt_rad).transpose() * direction_vector(d);
    if (!(n1.z() < 0.0))
        throw std::domain_error("direction_to_ground: direction does not reach the ground");
    const double t = cfg.height_m / -n1.z();
    return {t * n1.x(), t * n1.y()};
}

double ground_azimuth(GroundPoint p) { return std::atan2(p.x, p.y); }

double ground_range(GroundPoint p) { return std::hypot(p.x, p.y); }

GroundPoint ground_from_polar(double range_m, double azimuth_rad)
{
    return {range_m * std::sin(azimuth_rad), range_m * std::cos(azimuth_rad)};
}

bool in_cell(GroundPoint p, const GeometryConfig &cfg)
{
    const double r = ground_range(p);
    return r >= cfg.r_min_m - kCellSlack && r <= cfg.r_max_m + kCellSlack &&
           std::abs(ground_azimuth(p)) <= cfg.phi_span_rad + kCellSlack;
}

double downtilt_from_cell(double height_m, double r_min_m, double r_max_m)
{
    // acot(r / h) = atan(h / r)
    return 0.5 * (std::atan(height_m / r_min_m) + std::atan(height_m / r_max_m));
}

double downtilt_from_cell(const GeometryConfig &cfg)
{
    return downtilt_from_cell(cfg.height_m, cfg.r_min_m, cfg.r_max_m);
}

Direction cell_edge_direction(const GeometryConfig &cfg)
{
    const double near = ground_to_spherical({0.0, cfg.r_min_m}, cfg).dir.theta;
    const double far = ground_to_spherical({0.0, cfg.r_max_m}, cfg).dir.theta;
    return {cfg.phi_span_rad, std::max(std::abs(near), std::abs(far))};
}

} // namespace amafris
