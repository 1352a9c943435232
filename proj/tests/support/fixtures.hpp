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

// Shared objects for the default system, built once per test binary.

#pragma once

#include "amafris/budget.hpp"
#include "amafris/config.hpp"
#include "amafris/multiuser.hpp"
#include "amafris/pem.hpp"

namespace fixture
{

inline const amafris::SystemConfig &config()
{
    static const amafris::SystemConfig cfg = amafris::parse_config("");
    return cfg;
}

inline const amafris::NearFieldChannel &channel()
{
    static const amafris::NearFieldChannel ch = amafris::build_channel(config().channel);
    return ch;
}

inline const amafris::PemPrecoder &pem()
{
    static const amafris::PemPrecoder p = amafris::pem_design(channel());
    return p;
}

inline const std::vector<amafris::Vec3> &ris_positions()
{
    static const auto pos = amafris::element_positions(config().channel.ris());
    return pos;
}

inline const amafris::StackedChannel &stack(int modules)
{
    static const amafris::StackedChannel one = amafris::build_stack(config().stack(1));
    static const amafris::StackedChannel four = amafris::build_stack(config().stack(4));
    return modules == 1 ? one : four;
}

inline const amafris::LinkBudget &budget()
{
    static const amafris::LinkBudget b = amafris::link_budget(
        config().stack(), config().budget, amafris::edge_gain_dbi(pem(), config().channel, config().geometry));
    return b;
}

} // namespace fixture
