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

#ifndef CBSIM_CLI_CSV_HPP
#define CBSIM_CLI_CSV_HPP

#include "cbsim/metrics.hpp"
#include "cbsim/simulate.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cbsim::cli {

inline constexpr std::string_view kResultHeader =
    "scheme,snr_db,alpha,beta,m,np,trial,sum_rate_bps_hz";
inline constexpr std::string_view kBoundsHeader = "snr_db,full_reuse,orthogonal,ia,jt";

// Shortest round-trippable text with at most 9 significant digits,
// independent of the process locale.
std::string format_number(double value);

// One row per trial, then `mean` and `stderr` rows per (scheme, SNR) group.
std::string emit_csv(const ResultTable& table);

struct BoundsRow {
    double snr_db = 0;
    RateBounds bounds;
};

std::string emit_bounds_csv(const std::vector<BoundsRow>& rows);

struct CsvRow {
    std::string scheme;
    double snr_db = 0;
    double alpha = 0;
    double beta = 0;
    double m = 0;
    std::string np;    // integer or "inf"
    std::string trial; // integer, "mean" or "stderr"
    double sum_rate = 0;
};

// Reads text produced by emit_csv. Throws ValidationError on malformed input.
std::vector<CsvRow> parse_csv(std::string_view text);

} // namespace cbsim::cli

#endif
