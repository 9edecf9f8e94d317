// SPDX-License-Identifier: Apache-2.0
//
// cbsim - coordinated beamforming link-level simulator
// Copyright (C) 2026 The cbsim authors
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

#include "cli/commands.hpp"
#include "cli/config.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace cbsim::cli;

    CLI::App app{"cbsim: coordinated beamforming link-level simulator"};
    app.require_subcommand(1);

    RunArgs run;
    std::uint64_t seed = 0;
    int trials = 0;
    auto* run_cmd = app.add_subcommand("run", "Run a Monte Carlo sum-rate sweep");
    run_cmd->add_option("--config", run.config_path, "Scenario config file")->required();
    auto* seed_opt = run_cmd->add_option("--seed", seed, "Master seed (overrides the config)");
    run_cmd->add_option("--out", run.out_path, "Output CSV ('-' for stdout)")->required();
    auto* trials_opt = run_cmd->add_option("--trials", trials, "Trials per SNR point");
    run_cmd->add_option("--workers", run.workers, "Parallel workers (CBSIM_WORKERS overrides)")
        ->check(CLI::NonNegativeNumber);

    BoundsArgs bounds;
    std::string snr_list;
    auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form two-cell rate bounds");
    bounds_cmd->add_option("--snr-db", snr_list, "Comma-separated SNR points in dB")->required();
    bounds_cmd->add_option("--alpha", bounds.alpha, "Relative ICI power")->required();
    bounds_cmd->add_option("--beta", bounds.beta, "Relative OCI power")->required();
    bounds_cmd->add_option("--out", bounds.out_path, "Output CSV ('-' for stdout)")->required();

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Check a scenario config");
    validate_cmd->add_option("--config", validate_path, "Scenario config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run_cmd) {
            if (*seed_opt) run.seed = seed;
            if (*trials_opt) run.trials = trials;
            return run_command(run, std::cerr);
        }
        if (*bounds_cmd) {
            bounds.snr_db = parse_double_list(snr_list, "snr-db");
            return bounds_command(bounds, std::cerr);
        }
        if (*validate_cmd) return validate_command(validate_path, std::cerr);
    } catch (const cbsim::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}
