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

#ifndef CBSIM_CLI_COMMANDS_HPP
#define CBSIM_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cbsim::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kValidationError = 2,
    kNumericalFailure = 3,
};

struct RunArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path; // "-" writes to stdout
    std::optional<int> trials;
    int workers = 1;
};

struct BoundsArgs {
    std::vector<double> snr_db;
    double alpha = 1.0;
    double beta = 0.25;
    std::string out_path;
};

// Each command reports diagnostics on `log` and returns an ExitCode.
int run_command(const RunArgs& args, std::ostream& log);
int bounds_command(const BoundsArgs& args, std::ostream& log);
int validate_command(const std::string& config_path, std::ostream& log);

// Worker count after applying the CBSIM_WORKERS override.
int effective_workers(int requested);

} // namespace cbsim::cli

#endif
