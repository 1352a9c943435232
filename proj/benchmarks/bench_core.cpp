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

#include <benchmark/benchmark.h>

#include "amafris/budget.hpp"
#include "amafris/config.hpp"
#include "amafris/montecarlo.hpp"
#include "amafris/multiuser.hpp"
#include "amafris/nearfield.hpp"
#include "amafris/pem.hpp"

using namespace amafris;

namespace
{

const SystemConfig &config()
{
    static const SystemConfig cfg = parse_config("");
    return cfg;
}

void BM_BuildChannel(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(build_channel(config().channel));
}
BENCHMARK(BM_BuildChannel)->Unit(benchmark::kMillisecond);

// Square N x N RIS with the 4 x 4 feeder.
void BM_PemDesign(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    const auto ris = element_positions({n, n, Vec3::Zero(), 0.0});
    const auto amaf = element_positions({4, 4, Vec3::Zero(), 0.5 * n});
    const CMatrix t = channel_matrix(ris, amaf, 0.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(pem_design(t));
}
BENCHMARK(BM_PemDesign)->Arg(16)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Footprint(benchmark::State &state)
{
    const auto &cfg = config();
    const PemPrecoder pem = pem_design(build_channel(cfg.channel));
    const auto pos = element_positions(cfg.channel.ris());
    const CVector u = pem.sigma_link() * pem.u1;
    const CVector w = steering_phases(pem, pos, {deg_to_rad(30.0), deg_to_rad(10.0)}, std::nullopt).phasors();
    const FootprintGrid grid = cell_grid(cfg.geometry, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(rasterize_footprint(u, w, pos, cfg.geometry, grid));
}
BENCHMARK(BM_Footprint)->Unit(benchmark::kMillisecond);

void BM_MonteCarloDrops(benchmark::State &state)
{
    const auto &cfg = config();
    const StackedChannel st = build_stack(cfg.stack(4));
    const PemPrecoder &pem = st.pem;
    const LinkBudget b = link_budget(cfg.stack(), cfg.budget, edge_gain_dbi(pem, cfg.channel, cfg.geometry));
    MonteCarloOptions o;
    o.drops = static_cast<int>(state.range(0));
    o.p_amaf_w = b.p_amaf_w();
    o.noise_w = b.noise_w();
    for (auto _ : state)
        benchmark::DoNotOptimize(monte_carlo_cdf(st, cfg.geometry, o));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloDrops)->Arg(100)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
