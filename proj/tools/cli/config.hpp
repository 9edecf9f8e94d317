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

#ifndef CBSIM_CLI_CONFIG_HPP
#define CBSIM_CLI_CONFIG_HPP

#include "cbsim/model.hpp"
#include "cbsim/schemes.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cbsim::cli {

// Malformed config syntax; carries the 1-based line number.
class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

struct RunConfig {
    ClusterConfig cluster;
    Scenario scenario;
    std::vector<Scheme> schemes;
};

// Flat `key = value` text, `#` comments, several pairs per line allowed,
// lists comma-separated. Throws ParseError for syntax and ValidationError
// (naming the key) for unknown, missing or out-of-range values.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

// Comma-separated doubles; accepts "inf" / "-inf".
std::vector<double> parse_double_list(std::string_view text, std::string_view key);

} // namespace cbsim::cli

#endif
