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

#include "amafris/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <mutex>
#include <thread>

#include "amafris/errors.hpp"

namespace amafris
{

namespace
{

struct DropOutcome
{
    RVector rate;
    RVector margin;
};

DropOutcome run_drop(const StackedChannel &st, const GeometryConfig &geometry, const std::vector<Beam> &codebook,
                     const MonteCarloOptions &opt, int d)
{
    Rng rng = Rng(opt.seed).split(static_cast<std::uint64_t>(d));
    UserDrop drop;
    std::vector<Direction> aim;
    if (opt.scenario == Scenario::codebook)
    {
        CodebookDrop cd = codebook_drop(codebook, geometry, opt.users, opt.min_sep_rad, opt.ideal_positions, rng);
        for (int b : cd.beams)
            aim.push_back(codebook[static_cast<std::size_t>(b)].center);
        drop = std::move(cd.drop);
    }
    else
    {
        drop = schedule_drop(geometry, opt.users, opt.min_sep_rad, rng);
        for (const auto &u : drop.users)
            aim.push_back(u.dir);
    }

    const SteerOptions so{opt.quant_bits, opt.pointing_sigma_rad, rng.next_u64()};
    const auto profiles = steer_stack(st, aim, so);
    const auto h = effective_channel(st, drop, profiles);
    DropOutcome out;
    out.rate = evaluate_rates(h, drop, opt.p_amaf_w, opt.noise_w).rate;
    out.margin = diagonal_margin_db(effective_channel_center(st, drop, profiles));
    return out;
}

} // namespace

double CdfTable::quantile(double p) const
{
    for (std::size_t i = 0; i < probabilities.size(); ++i)
        if (std::abs(probabilities[i] - p) < 1e-12)
            return quantiles[i];
    throw std::out_of_range("CdfTable::quantile: probability not on the grid");
}

double empirical_quantile(std::vector<double> sorted, double p)
{
    if (sorted.empty())
        throw std::invalid_argument("empirical_quantile: no samples");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("empirical_quantile: probability outside [0, 1]");
    if (!std::is_sorted(sorted.begin(), sorted.end()))
        std::sort(sorted.begin(), sorted.end());
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

CdfTable make_cdf(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    CdfTable t;
    for (int i = 1; i <= 99; ++i)
    {
        const double p = i / 100.0;
        t.probabilities.push_back(p);
        t.quantiles.push_back(empirical_quantile(values, p));
    }
    return t;
}

MonteCarloResult monte_carlo_cdf(const StackedChannel &st, const GeometryConfig &geometry,
                                 const MonteCarloOptions &options)
{
    if (options.drops < 1)
        throw ValidationError("drops", "need at least one drop");
    if (options.users != st.modules)
        throw ValidationError("users", "user count must equal the number of stacked modules");
    if (!(options.p_amaf_w > 0.0) || !(options.noise_w > 0.0))
        throw ValidationError("budget", "feed and noise power must be positive");

    const std::vector<Beam> codebook =
        options.scenario == Scenario::codebook ? naive_codebook(geometry) : std::vector<Beam>{};

    std::vector<DropOutcome> outcomes(static_cast<std::size_t>(options.drops));
    const unsigned workers = std::clamp(options.threads, 1u, static_cast<unsigned>(options.drops));
    if (workers == 1)
    {
        for (int d = 0; d < options.drops; ++d)
            outcomes[static_cast<std::size_t>(d)] = run_drop(st, geometry, codebook, options, d);
    }
    else
    {
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        std::mutex failure_mutex;
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < workers; ++t)
                pool.emplace_back([&] {
                    for (int d = next++; d < options.drops && !failed; d = next++)
                    {
                        try
                        {
                            outcomes[static_cast<std::size_t>(d)] = run_drop(st, geometry, codebook, options, d);
                        }
                        catch (...)
                        {
                            std::lock_guard lock(failure_mutex);
                            if (!failure)
                                failure = std::current_exception();
                            failed = true;
                        }
                    }
                });
        }
        if (failure)
            std::rethrow_exception(failure);
    }

    MonteCarloResult res;
    std::vector<double> pooled;
    for (int d = 0; d < options.drops; ++d)
    {
        const auto &o = outcomes[static_cast<std::size_t>(d)];
        for (int u = 0; u < options.users; ++u)
        {
            res.rows.push_back({d, u, o.rate[u]});
            res.margins_db.push_back(o.margin[u]);
            pooled.push_back(o.rate[u]);
        }
    }
    res.cdf = make_cdf(std::move(pooled));
    return res;
}

} // namespace amafris
