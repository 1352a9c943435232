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

#include "amafris/power.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <thread>

#include <yaml-cpp/yaml.h>

#include "amafris/errors.hpp"

namespace amafris
{

double splitter_ratio_db(int fanout, double insertion_db)
{
    if (fanout < 2)
        throw ValidationError("fanout", "a splitter needs at least two outputs");
    if (!(insertion_db >= 0.0))
        throw ValidationError("insertion_db", "insertion loss must be nonnegative");
    return insertion_db + 10.0 * std::log10(static_cast<double>(fanout));
}

double splitter_chain_db(const std::vector<SplitterStage> &stages)
{
    double db = 0.0;
    for (const auto &s : stages)
        db += splitter_ratio_db(s.fanout, s.insertion_db);
    return db;
}

double pa_dc_power(double max_coeff, double p_rf_w, const std::vector<SplitterStage> &stages, double eta)
{
    if (!(max_coeff > 0.0) || !(p_rf_w > 0.0))
        throw ValidationError("p_rf", "coefficient and RF power must be positive");
    if (!(eta > 0.0 && eta <= 1.0))
        throw ValidationError("eta", "PA efficiency must lie in (0, 1]");
    return from_db(splitter_chain_db(stages)) * max_coeff * p_rf_w / eta;
}

void GroupingPlan::validate(std::size_t element_count) const
{
    if (!(eta > 0.0 && eta <= 1.0))
        throw ValidationError("eta", "PA efficiency must lie in (0, 1]");
    std::vector<int> seen(element_count, 0);
    for (const auto &g : groups)
    {
        if (g.elements.empty() || g.pa_count < 1)
            throw ValidationError("groups", "every group needs elements and at least one PA");
        std::size_t ports = static_cast<std::size_t>(g.pa_count);
        for (const auto &s : g.stages)
            ports *= static_cast<std::size_t>(std::max(s.fanout, 0));
        if (ports < g.elements.size())
            throw ValidationError("groups", "splitter fanout does not cover the group in plan " + name);
        for (std::size_t e : g.elements)
        {
            if (e >= element_count)
                throw ValidationError("groups", "element index out of range in plan " + name);
            ++seen[e];
        }
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
        throw ValidationError("groups", "groups do not partition the elements in plan " + name);
}

PlanPower evaluate_plan(const GroupingPlan &plan, const RVector &coefficients, double p_rf_w)
{
    plan.validate(static_cast<std::size_t>(coefficients.size()));
    PlanPower out;
    out.name = plan.name;
    for (const auto &g : plan.groups)
    {
        GroupPower gp;
        gp.size = g.elements.size();
        for (std::size_t e : g.elements)
            gp.max_coeff = std::max(gp.max_coeff, coefficients[static_cast<Eigen::Index>(e)]);
        gp.splitter_db = splitter_chain_db(g.stages);
        gp.max_rf_dbm = watts_to_dbm(gp.max_coeff * p_rf_w);
        gp.dc_w = static_cast<double>(g.pa_count) * pa_dc_power(gp.max_coeff, p_rf_w, g.stages, plan.eta);
        out.dc_w += gp.dc_w;
        out.groups.push_back(gp);
    }
    return out;
}

GroupingPlan rank_plan(const PlanSpec &spec, const RVector &coefficients)
{
    std::vector<std::size_t> order(static_cast<std::size_t>(coefficients.size()));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return coefficients[static_cast<Eigen::Index>(a)] > coefficients[static_cast<Eigen::Index>(b)];
    });

    GroupingPlan plan{spec.name, spec.array, spec.eta, {}};
    std::size_t next = 0;
    for (const auto &g : spec.groups)
    {
        if (next + g.size > order.size())
            throw ValidationError("groups", "group sizes exceed the element count in plan " + spec.name);
        PowerGroup pg{{order.begin() + static_cast<std::ptrdiff_t>(next),
                       order.begin() + static_cast<std::ptrdiff_t>(next + g.size)},
                      g.stages,
                      g.pa_count};
        std::sort(pg.elements.begin(), pg.elements.end());
        plan.groups.push_back(std::move(pg));
        next += g.size;
    }
    if (next != order.size())
        throw ValidationError("groups", "group sizes do not cover the element count in plan " + spec.name);
    return plan;
}

PlanSpec load_plan_spec(const std::filesystem::path &path)
{
    YAML::Node root;
    try
    {
        root = YAML::LoadFile(path.string());
    }
    catch (const YAML::BadFile &)
    {
        throw std::runtime_error("cannot read plan file " + path.string());
    }
    catch (const YAML::Exception &e)
    {
        throw ValidationError("plan", path.string() + ": " + e.what());
    }

    try
    {
        PlanSpec spec;
        spec.name = root["name"].as<std::string>(path.stem().string());
        const auto array = root["array"].as<std::string>("amaf");
        if (array == "amaf")
            spec.array = FedArray::amaf;
        else if (array == "ris")
            spec.array = FedArray::ris;
        else
            throw ValidationError("array", "expected amaf or ris in " + path.string());
        spec.eta = root["eta"].as<double>(0.3);
        if (!root["groups"] || !root["groups"].IsSequence())
            throw ValidationError("groups", "missing group list in " + path.string());
        for (const auto &g : root["groups"])
        {
            PlanSpec::Group group;
            group.size = g["size"].as<std::size_t>();
            group.pa_count = g["pa_count"].as<int>(1);
            if (g["stages"])
                for (const auto &s : g["stages"])
                {
                    const SplitterStage st{s["fanout"].as<int>(), s["insertion_db"].as<double>(0.0)};
                    const int repeat = s["repeat"].as<int>(1);
                    if (repeat < 1)
                        throw ValidationError("repeat", "stage repeat must be at least 1 in " + path.string());
                    group.stages.insert(group.stages.end(), static_cast<std::size_t>(repeat), st);
                }
            spec.groups.push_back(std::move(group));
        }
        return spec;
    }
    catch (const YAML::Exception &e)
    {
        throw ValidationError("plan", path.string() + ": " + e.what());
    }
}

std::filesystem::path preset_dir()
{
    if (const char *env = std::getenv("AMAFRIS_PRESET_DIR"); env != nullptr && *env != '\0')
        return env;
    // source tree first, so a build directory never picks up stale installed files
    if (std::filesystem::is_directory(AMAFRIS_PRESET_DIR))
        return AMAFRIS_PRESET_DIR;
    return AMAFRIS_INSTALLED_PRESET_DIR;
}

ArchitecturePresets load_architecture_presets(const std::filesystem::path &dir)
{
    return {load_plan_spec(dir / "arch1.yaml"), load_plan_spec(dir / "arch1s.yaml"),
            load_plan_spec(dir / "arch2.yaml"), load_plan_spec(dir / "arch2s.yaml")};
}

RVector amaf_coefficients(const PemPrecoder &pem) { return pem.v1.cwiseAbs2(); }

RVector ris_coefficients(const PemPrecoder &pem)
{
    return pem.sigma_link() * pem.sigma_link() * pem.u1.cwiseAbs2();
}

PowerReport architecture_report(const PemPrecoder &pem, const LinkBudget &budget, const ArchitecturePresets &presets)
{
    const RVector amaf = amaf_coefficients(pem);
    const RVector ris = ris_coefficients(pem);
    const double p = budget.p_amaf_w();
    const auto eval = [&](const PlanSpec &spec) {
        const RVector &c = spec.array == FedArray::amaf ? amaf : ris;
        return evaluate_plan(rank_plan(spec, c), c, p);
    };
    return {eval(presets.arch1), eval(presets.arch1s), eval(presets.arch2), eval(presets.arch2s)};
}

namespace
{

ScalingRow scaling_row(int n, double feed_distance)
{
    ChannelConfig cfg;
    cfg.ris_nx = cfg.ris_nz = n;
    cfg.feed_distance = feed_distance;
    cfg.validate();
    const auto ris = element_positions(cfg.ris());
    const auto amaf = element_positions(cfg.amaf());
    const PemPrecoder pem = pem_design(channel_matrix(ris, amaf, 0.0));
    return {n, feed_distance, to_db(ris_gain(pem.sigma_link() * pem.u1))};
}

} // namespace

ScalingResult gain_scaling(const std::vector<std::pair<int, double>> &sizes, unsigned threads)
{
    ScalingResult res;
    res.rows.resize(sizes.size());
    const unsigned workers = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::max<std::size_t>(sizes.size(), 1)));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < sizes.size(); ++i)
            res.rows[i] = scaling_row(sizes[i].first, sizes[i].second);
    }
    else
    {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < workers; ++t)
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < sizes.size(); i = next++)
                    {
                        try
                        {
                            res.rows[i] = scaling_row(sizes[i].first, sizes[i].second);
                        }
                        catch (...)
                        {
                            std::lock_guard lock(failure_mutex);
                            if (!failure)
                                failure = std::current_exception();
                        }
                    }
                });
        }
        if (failure)
            std::rethrow_exception(failure);
    }

    if (res.rows.size() >= 2)
    {
        double mx = 0.0, my = 0.0;
        for (const auto &r : res.rows)
        {
            mx += 20.0 * std::log10(r.n);
            my += r.gamma_dbi;
        }
        mx /= static_cast<double>(res.rows.size());
        my /= static_cast<double>(res.rows.size());
        double sxy = 0.0, sxx = 0.0;
        for (const auto &r : res.rows)
        {
            const double dx = 20.0 * std::log10(r.n) - mx;
            sxy += dx * (r.gamma_dbi - my);
            sxx += dx * dx;
        }
        res.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    }
    return res;
}

} // namespace amafris
