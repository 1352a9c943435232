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

#include <cstdint>
#include <optional>
#include <vector>

#include "amafris/codebook.hpp"
#include "amafris/multiuser.hpp"

namespace amafris
{

enum class Scenario
{
    pointing,
    codebook,
};

struct MonteCarloOptions
{
    Scenario scenario = Scenario::pointing;
    int users = 4;
    int drops = 1000;
    double min_sep_rad = deg_to_rad(15.0);
    double pointing_sigma_rad = 0.0;
    std::optional<int> quant_bits;
    bool ideal_positions = false; // codebook: users at the beam anchors
    double p_amaf_w = 0.0;
    double noise_w = 0.0;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct RateRow
{
    int drop;
    int user;
    double rate;
};

struct CdfTable
{
    std::vector<double> probabilities; // 0.01 .. 0.99
    std::vector<double> quantiles;
    [[nodiscard]] double quantile(double p) const;
};

struct MonteCarloResult
{
    std::vector<RateRow> rows; // drop-major
    std::vector<double> margins_db; // per row of H(0)
    CdfTable cdf;
};

/// Pooled per-user rates over independent drops. Drop d draws everything
/// from the stream split(seed, d), so the result does not depend on the
/// number of worker threads. The stack must have options.users modules.
MonteCarloResult monte_carlo_cdf(const StackedChannel &st, const GeometryConfig &geometry,
                                 const MonteCarloOptions &options);

// Empirical quantile with linear interpolation between order statistics.
double empirical_quantile(std::vector<double> sorted, double p);
CdfTable make_cdf(std::vector<double> values);

} // namespace amafris
