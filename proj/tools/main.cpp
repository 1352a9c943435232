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

// amafris command line interface.
//
// Exit codes: 0 success, 1 I/O or other runtime failure, 2 invalid
// configuration or arguments, 3 numerical failure.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "amafris/config.hpp"
#include "amafris/errors.hpp"
#include "amafris/experiments.hpp"

namespace
{

constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Flags
{
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> users;
    std::optional<int> drops;
    std::optional<double> pointing_sigma_deg;
    std::optional<int> quant_bits;
    std::optional<unsigned> threads;
    bool codebook = false;
    bool ideal = false;
    double phi_deg = 0.0;
    double theta_deg = 0.0;
    std::optional<int> subcarrier;
};

amafris::SystemConfig resolve_config(const Flags &f)
{
    std::string path = f.config;
    if (path.empty())
        if (const char *env = std::getenv(amafris::kConfigEnvVar); env != nullptr)
            path = env;
    amafris::SystemConfig cfg = path.empty() ? amafris::parse_config("") : amafris::load_config(path);
    auto &e = cfg.experiment;
    if (f.seed)
        e.seed = *f.seed;
    if (f.users)
        e.users = *f.users;
    if (f.drops)
        e.drops = *f.drops;
    if (f.pointing_sigma_deg)
        e.pointing_sigma_rad = amafris::deg_to_rad(*f.pointing_sigma_deg);
    if (f.quant_bits)
        e.quant_bits = *f.quant_bits;
    if (f.threads)
        e.threads = *f.threads;
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"amafris: near-field fed RIS multibeam downlink simulator"};
    app.set_version_flag("--version", amafris::version_string());
    app.require_subcommand(1);

    Flags f;
    const auto describe = [](const std::string &name) -> std::string {
        static const std::map<std::string, std::string> text = {
            {"delay", "delay spread, narrowband bound and cyclic prefix"},
            {"pem", "PEM feed and RIS amplitude templates with tapers"},
            {"footprint", "ground footprint of one steered beam"},
            {"rates", "Monte Carlo rate CDF for stacked modules"},
            {"codebook", "naive codebook beams, footprint and rates"},
            {"budget", "cell-edge link budget"},
            {"power", "DC power of the four PA architectures"},
            {"scaling", "boresight gain against aperture size"},
            {"reproduce-all", "every artifact above in one directory"},
        };
        return text.at(name);
    };
    for (const auto &name : amafris::subcommands())
    {
        CLI::App *sub = app.add_subcommand(name, describe(name));
        sub->add_option("--config", f.config, "YAML config file (default: $AMAFRIS_CONFIG, else built-in)");
        sub->add_option("--out", f.out, "output directory")->capture_default_str();
        sub->add_option("--seed", f.seed, "global seed");
        sub->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
        if (name == "rates" || name == "codebook" || name == "reproduce-all" || name == "footprint")
        {
            sub->add_option("--quant-bits", f.quant_bits, "phase quantization bits")->check(CLI::Range(1, 30));
            sub->add_option("--pointing-sigma-deg", f.pointing_sigma_deg, "pointing error std, degrees")
                ->check(CLI::NonNegativeNumber);
        }
        if (name == "rates" || name == "codebook" || name == "reproduce-all")
        {
            sub->add_option("--users", f.users, "served users (stacked modules)")->check(CLI::PositiveNumber);
            sub->add_option("--drops", f.drops, "Monte Carlo drops")->check(CLI::PositiveNumber);
        }
        if (name == "rates")
            sub->add_flag("--codebook", f.codebook, "serve users with the naive codebook");
        if (name == "rates" || name == "codebook")
            sub->add_flag("--ideal-positions", f.ideal, "codebook users at the beam anchors");
        if (name == "footprint")
        {
            sub->add_option("--phi-deg", f.phi_deg, "beam azimuth in the RIS frame")->capture_default_str();
            sub->add_option("--theta-deg", f.theta_deg, "beam elevation in the RIS frame")->capture_default_str();
            sub->add_option("--subcarrier", f.subcarrier, "subcarrier index (default: center frequency)");
        }
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try
    {
        const std::string name = app.get_subcommands().front()->get_name();
        const amafris::SystemConfig cfg = resolve_config(f);
        for (const auto &w : cfg.warnings())
            std::cerr << "warning: " << w << '\n';

        amafris::RunOptions opt;
        opt.target = {amafris::deg_to_rad(f.phi_deg), amafris::deg_to_rad(f.theta_deg)};
        opt.subcarrier = f.subcarrier;
        opt.codebook = f.codebook;
        opt.ideal_positions = f.ideal;
        const auto manifest = amafris::run(name, cfg, f.out, opt);
        for (const auto &a : manifest.artifacts)
            std::cout << a.file << ' ' << a.checksum << '\n';
        return 0;
    }
    catch (const amafris::ValidationError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    catch (const amafris::NumericalError &e)
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
