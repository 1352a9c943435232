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

#include "amafris/units.hpp"

namespace amafris
{

// Ground frame S1 has its origin on the ground plane; the RIS frame S2 is
// centered on the RIS at height h and tilted down by alpha in the z-y plane.
struct GeometryConfig
{
    double height_m = 20.0;
    double downtilt_rad = 0.0; // see downtilt_from_cell()
    double r_min_m = 10.0;
    double r_max_m = 100.0;
    double phi_span_rad = deg_to_rad(60.0); // half-span of the sector
    double wavelength_m = kSpeedOfLight / 100e9;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct GroundPoint
{
    double x = 0.0;
    double y = 0.0;
};

// Azimuth phi is measured clockwise from the S2 y-axis seen from above,
// elevation theta is positive toward the S2 z-axis. Boresight is (0, 0).
struct Direction
{
    double phi = 0.0;
    double theta = 0.0;
};

struct SphericalS2
{
    double rho = 0.0;
    Direction dir;
};

Eigen::Matrix3d rotation_s1_to_s2(double alpha);

Vec3 s1_to_s2(const Vec3 &p, const GeometryConfig &cfg);
Vec3 s2_to_s1(const Vec3 &p, const GeometryConfig &cfg);

// Unit propagation vector n(phi, theta) in S2.
Vec3 direction_vector(Direction d);

Vec3 spherical_to_cartesian(const SphericalS2 &s);
SphericalS2 cartesian_to_spherical(const Vec3 &p);

// Throws std::domain_error when the point coincides with the RIS center.
SphericalS2 ground_to_spherical(GroundPoint p, const GeometryConfig &cfg);

// Intersects the ray from the RIS center along `d` with the ground plane.
// Throws std::domain_error if the ray does not reach the ground.
GroundPoint direction_to_ground(Direction d, const GeometryConfig &cfg);

double ground_azimuth(GroundPoint p);
double ground_range(GroundPoint p);
GroundPoint ground_from_polar(double range_m, double azimuth_rad);

// Closed intervals with 1e-12 slack.
bool in_cell(GroundPoint p, const GeometryConfig &cfg);

// Mean of the downlook angles to the near and far cell edges.
double downtilt_from_cell(double height_m, double r_min_m, double r_max_m);
double downtilt_from_cell(const GeometryConfig &cfg);

// Edge of the coverage region in S2: full azimuth span at the far-edge
// elevation. Used for the cell-edge gain of the link budget.
Direction cell_edge_direction(const GeometryConfig &cfg);

} // namespace amafris
