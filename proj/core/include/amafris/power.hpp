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

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "amafris/budget.hpp"
#include "amafris/pem.hpp"

namespace amafris
{

struct SplitterStage
{
    int fanout = 2;
    double insertion_db = 1.0;
};

// Input to per-output-port power ratio of a 1:N splitter, I * N, in dB.
double splitter_ratio_db(int fanout, double insertion_db);
double splitter_chain_db(const std::vector<SplitterStage> &stages);

// DC power of a PA whose largest output port needs max_coeff * p_rf_w
// after the splitter chain: L^Ns * Omega * P_RF / eta.
double pa_dc_power(double max_coeff, double p_rf_w, const std::vector<SplitterStage> &stages, double eta);

enum class FedArray
{
    amaf,
    ris,
};

// pa_count identical PAs drive the group's elements through `stages`, all
// biased for the group's largest coefficient. Without stages every element
// has its own PA.
struct PowerGroup
{
    std::vector<std::size_t> elements;
    std::vector<SplitterStage> stages;
    int pa_count = 1;
};

struct GroupingPlan
{
    std::string name;
    FedArray array = FedArray::amaf;
    double eta = 0.3;
    std::vector<PowerGroup> groups;

    // Throws std::invalid_argument unless the groups partition
    // [0, element_count) and every group's fanout covers its elements.
    void validate(std::size_t element_count) const;
};

struct GroupPower
{
    std::size_t size = 0;
    double max_coeff = 0.0;
    double max_rf_dbm = 0.0;
    double splitter_db = 0.0;
    double dc_w = 0.0;
};

struct PlanPower
{
    std::string name;
    double dc_w = 0.0;
    std::vector<GroupPower> groups;
};

PlanPower evaluate_plan(const GroupingPlan &plan, const RVector &coefficients, double p_rf_w);

struct PowerReport
{
    PlanPower p1, p1s, p2, p2s;
};

// Preset file description: groups are listed by size in order of
// decreasing taper coefficient.
struct PlanSpec
{
    std::string name;
    FedArray array = FedArray::amaf;
    double eta = 0.3;
    struct Group
    {
        std::size_t size = 0;
        int pa_count = 1;
        std::vector<SplitterStage> stages;
    };
    std::vector<Group> groups;
};

// Resolves a size-ranked spec into explicit element sets.
GroupingPlan rank_plan(const PlanSpec &spec, const RVector &coefficients);

PlanSpec load_plan_spec(const std::filesystem::path &path);
// $AMAFRIS_PRESET_DIR, else the source tree, else the installed data directory.
std::filesystem::path preset_dir();

// The four shipped presets, read from preset_dir().
struct ArchitecturePresets
{
    PlanSpec arch1, arch1s, arch2, arch2s;
};
ArchitecturePresets load_architecture_presets(const std::filesystem::path &dir = preset_dir());

RVector amaf_coefficients(const PemPrecoder &pem); // |v1|^2
RVector ris_coefficients(const PemPrecoder &pem);  // |u1|^2

PowerReport architecture_report(const PemPrecoder &pem, const LinkBudget &budget,
                                const ArchitecturePresets &presets);

struct ScalingRow
{
    int n = 0;
    double feed_distance = 0.0;
    double gamma_dbi = 0.0;
};

struct ScalingResult
{
    std::vector<ScalingRow> rows;
    // Least-squares slope of Gamma (dB) against 20 log10 N.
    double slope = 0.0;
};

// Square N x N RIS, 4 x 4 feeder, PEM design per size.
ScalingResult gain_scaling(const std::vector<std::pair<int, double>> &sizes, unsigned threads = 1);

} // namespace amafris
