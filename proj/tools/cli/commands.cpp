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

#include "cbsim/metrics.hpp"
#include "cbsim/simulate.hpp"
#include "cli/config.hpp"
#include "cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string_view>

namespace cbsim::cli {

namespace {

bool write_output(const std::string& path, const std::string& text, std::ostream& log) {
    if (path == "-") {
        std::cout << text;
        return static_cast<bool>(std::cout);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        log << "error: cannot open '" << path << "' for writing\n";
        return false;
    }
    out << text;
    return static_cast<bool>(out);
}

} // namespace

int effective_workers(int requested) {
    if (const char* env = std::getenv("CBSIM_WORKERS"); env && *env) {
        const std::string_view s(env);
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc{} && ptr == s.data() + s.size() && v >= 0) return v;
    }
    return requested;
}

int run_command(const RunArgs& args, std::ostream& log) {
    RunConfig rc;
    try {
        rc = load_config(args.config_path);
        if (args.seed) rc.scenario.master_seed = *args.seed;
        if (args.trials) {
            if (*args.trials < 1) throw ValidationError("trials: must be >= 1");
            rc.scenario.trials = *args.trials;
        }
    } catch (const ParseError& e) {
        log << "parse error: " << e.what() << '\n';
        return kValidationError;
    } catch (const ValidationError& e) {
        log << "validation error: " << e.what() << '\n';
        return kValidationError;
    }

    const ResultTable table =
        run_sweep(rc.cluster, rc.scenario, rc.schemes, effective_workers(args.workers));
    if (!write_output(args.out_path, emit_csv(table), log)) return kUsageError;

    const int failures = table.failures();
    const auto total = static_cast<int>(table.trials.size());
    for (const auto& t : table.trials)
        if (t.failed)
            log << "warning: " << scheme_name(t.scheme) << " snr=" << t.snr_db << " trial=" << t.trial
                << ": " << t.error << '\n';
    if (failures > 0) log << failures << " of " << total << " trials failed and were excluded\n";
    if (2 * failures > total) return kNumericalFailure;
    return kSuccess;
}

int bounds_command(const BoundsArgs& args, std::ostream& log) {
    try {
        if (args.snr_db.empty()) throw ValidationError("snr-db: at least one SNR point is required");
        std::vector<BoundsRow> rows;
        for (double db : args.snr_db) {
            if (std::isnan(db) || db == INFINITY) throw ValidationError("snr-db: invalid SNR point");
            const double snr = std::isinf(db) ? 0.0 : std::pow(10.0, db / 10.0);
            rows.push_back({db, theory_bounds(snr, args.alpha, args.beta, 2)});
        }
        if (!write_output(args.out_path, emit_bounds_csv(rows), log)) return kUsageError;
    } catch (const ValidationError& e) {
        log << "validation error: " << e.what() << '\n';
        return kValidationError;
    }
    return kSuccess;
}

int validate_command(const std::string& config_path, std::ostream& log) {
    try {
        const RunConfig rc = load_config(config_path);
        log << "ok: B=" << rc.cluster.num_bs << ", " << rc.scenario.snr_db.size() << " SNR points, "
            << rc.schemes.size() << " schemes, " << rc.scenario.trials << " trials\n";
        return kSuccess;
    } catch (const ParseError& e) {
        log << "parse error: " << e.what() << '\n';
    } catch (const ValidationError& e) {
        log << "validation error: " << e.what() << '\n';
    }
    return kValidationError;
}

} // namespace cbsim::cli
