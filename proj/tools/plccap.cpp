// SPDX-License-Identifier: Apache-2.0
//
// plccap - capacity bounds for broadband power line channels
// Copyright (C) 2026 The plccap authors
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


#include <plccap/cli/commands.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace
{
void add_common(CLI::App *cmd, plccap::cli::Options &o, bool sweep)
{
    cmd->add_option("--config", o.config, "scenario document (JSON, schema 1)");
    cmd->add_option("--preset", o.preset, "built-in scenario or noise preset");
    cmd->add_option("--n-omega", o.n_omega, "quadrature nodes (even, >= 16)");
    cmd->add_option("--seed", o.seed, "random seed");
    if (sweep)
    {
        cmd->add_option("--snr", o.snr, "SNR grid in dB: A:STEP:B or a comma-separated list");
        cmd->add_option("--csv", o.csv, "CSV output path (default: stdout)");
        cmd->add_option("--svg", o.svg, "SVG chart output path");
    }
    cmd->add_option("--json", o.json, "JSON output path");
}
} // namespace

int main(int argc, char **argv)
{
    namespace cli = plccap::cli;
    CLI::App app{"plccap: capacity bounds for LPTV channels with cyclostationary non-Gaussian noise"};
    app.require_subcommand(1);

    cli::Options bounds_opt, entropy_opt, validate_opt;
    auto *bounds = app.add_subcommand("bounds", "upper and lower capacity bounds along an SNR grid");
    add_common(bounds, bounds_opt, true);
    auto *entropy = app.add_subcommand("entropy", "noise entropy rate (exact value or interval)");
    add_common(entropy, entropy_opt, false);
    auto *validate = app.add_subcommand("validate", "run the model invariant checks");
    add_common(validate, validate_opt, true);
    validate->add_flag("--mc", validate_opt.mc, "include the Monte-Carlo entropy cross-check");

    auto *presets = app.add_subcommand("presets", "built-in presets");
    presets->require_subcommand(1);
    std::string dump_name;
    auto *dump = presets->add_subcommand("dump", "print preset documents");
    dump->add_option("name", dump_name, "scenario or noise preset (default: all)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::exit_config;
    }

    try
    {
        if (bounds->parsed())
            return cli::cmd_bounds(bounds_opt, std::cout, std::cerr);
        if (entropy->parsed())
            return cli::cmd_entropy(entropy_opt, std::cout, std::cerr);
        if (validate->parsed())
            return cli::cmd_validate(validate_opt, std::cout, std::cerr);
        if (dump->parsed())
            return cli::cmd_presets_dump(dump_name, std::cout, std::cerr);
    }
    catch (const cli::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_invariant;
    }
    return cli::exit_config;
}
