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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amafris/config.hpp"

namespace amafris
{

struct Artifact
{
    std::string file;
    std::string checksum; // FNV-1a 64, hex
};

struct RunManifest
{
    std::string subcommand;
    std::uint64_t seed = 0;
    std::string version;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<Artifact> artifacts;
};

// Per-subcommand options that do not belong in the config file.
struct RunOptions
{
    // footprint
    Direction target{};
    std::optional<int> subcarrier; // nullopt = center frequency f = 0
    // rates
    bool codebook = false;
    bool ideal_positions = false;
};

inline const std::vector<std::string> &subcommands()
{
    static const std::vector<std::string> names = {"delay", "pem",   "footprint", "rates",        "codebook",
                                                   "budget", "power", "scaling",   "reproduce-all"};
    return names;
}

/// Runs one experiment and writes <subcommand>-<seed>.{csv,json} artifacts
/// plus manifest-<subcommand>-<seed>.json into out_dir. Outputs are
/// byte-identical for identical config and seed, whatever the thread count.
RunManifest run(std::string_view subcommand, const SystemConfig &cfg, const std::filesystem::path &out_dir,
                const RunOptions &options = {});

std::string fnv1a_hex(std::string_view data);
std::string version_string();

} // namespace amafris
