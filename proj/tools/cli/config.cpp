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

#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cbsim::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void invalid(std::string_view key, std::string_view what) {
    throw ValidationError(std::string(key) + ": " + std::string(what));
}

double to_double(std::string_view text, std::string_view key) {
    text = trim(text);
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty())
        invalid(key, "expected a number, got '" + std::string(text) + "'");
    return v;
}

long long to_integer(std::string_view text, std::string_view key) {
    text = trim(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        invalid(key, "expected an integer, got '" + std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(trim(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<int> antenna_list(std::string_view text, std::string_view key) {
    std::vector<int> out;
    for (auto item : split_list(text)) {
        const long long v = to_integer(item, key);
        if (v < 1 || v > 4096) invalid(key, "antenna counts must lie in [1, 4096]");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

// Tokenizes one comment-stripped line into key/value pairs. Spaces around
// '=' and after ',' are allowed.
std::vector<std::pair<std::string, std::string>> tokenize(std::string_view line, int line_no) {
    std::string compact;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            // drop whitespace adjacent to '=' or ','
            std::size_t j = i;
            while (j < line.size() && (line[j] == ' ' || line[j] == '\t' || line[j] == '\r')) ++j;
            const char prev = compact.empty() ? '\0' : compact.back();
            const char next = j < line.size() ? line[j] : '\0';
            if (prev != '=' && prev != ',' && next != '=' && next != ',' && !compact.empty() && next != '\0')
                compact.push_back(' ');
            i = j - 1;
            continue;
        }
        compact.push_back(c);
    }
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream words(compact);
    std::string token;
    while (words >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0 ||
            token.find('=', eq + 1) != std::string::npos)
            throw ParseError(line_no, "expected key = value, got '" + token + "'");
        out.emplace_back(token.substr(0, eq), token.substr(eq + 1));
    }
    return out;
}

const std::set<std::string, std::less<>> kKnownKeys = {
    "B",      "nT",        "nR",        "P",        "alpha",       "beta",
    "m",      "np",        "snr_db",    "trials",   "seed",        "schemes",
    "max_iters", "tol",    "ia_max_iters", "ia_tol", "streams",    "lambda",
    "gamma_min_db", "prune_fraction"};

const std::set<std::string, std::less<>> kRequiredKeys = {"B",  "nT",     "nR",     "alpha",
                                                          "beta", "np", "snr_db", "schemes"};

} // namespace

std::vector<double> parse_double_list(std::string_view text, std::string_view key) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    for (auto item : split_list(text)) out.push_back(to_double(item, key));
    return out;
}

RunConfig parse_config(std::string_view text) {
    std::map<std::string, std::string, std::less<>> kv;
    int line_no = 0;
    while (!text.empty() || line_no == 0) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        for (auto& [k, v] : tokenize(line, line_no)) {
            if (!kKnownKeys.contains(k)) invalid(k, "unknown key");
            if (kv.contains(k)) throw ParseError(line_no, "duplicate key '" + k + "'");
            kv.emplace(k, v);
        }
        if (text.empty()) break;
    }
    for (const auto& k : kRequiredKeys)
        if (!kv.contains(k)) invalid(k, "required key is missing");

    RunConfig rc;
    const long long b = to_integer(kv["B"], "B");
    if (b < 1 || b > 64) invalid("B", "must lie in [1, 64]");
    rc.cluster.num_bs = static_cast<int>(b);
    const auto expand = [&](std::string_view key) {
        std::vector<int> v = antenna_list(kv.find(key)->second, key);
        if (v.size() == 1) v.assign(static_cast<std::size_t>(b), v.front());
        if (v.size() != static_cast<std::size_t>(b)) invalid(key, "expected one value or one per BS");
        return v;
    };
    rc.cluster.tx_antennas = expand("nT");
    rc.cluster.rx_antennas = expand("nR");
    if (kv.contains("P")) rc.cluster.power = to_double(kv["P"], "P");
    if (!(rc.cluster.power > 0.0) || !std::isfinite(rc.cluster.power)) invalid("P", "must be positive");

    Scenario& sc = rc.scenario;
    sc.alpha = to_double(kv["alpha"], "alpha");
    if (!(sc.alpha >= 0.0 && sc.alpha <= 1.0)) invalid("alpha", "must lie in [0, 1]");
    sc.beta = to_double(kv["beta"], "beta");
    if (!(sc.beta >= 0.0 && sc.beta <= 1.0)) invalid("beta", "must lie in [0, 1]");
    if (kv.contains("m")) sc.nakagami_m = to_double(kv["m"], "m");
    if (!(sc.nakagami_m >= 0.5) || !std::isfinite(sc.nakagami_m)) invalid("m", "must be >= 0.5");

    const std::string_view np = trim(kv["np"]);
    if (np == "inf") {
        sc.pilots = PilotCount::infinite();
    } else {
        const long long n = to_integer(np, "np");
        if (n < 1 || n > 1000000000) invalid("np", "must be a positive integer or inf");
        sc.pilots = PilotCount::finite(static_cast<int>(n));
    }

    sc.snr_db = parse_double_list(kv["snr_db"], "snr_db");
    if (sc.snr_db.empty()) invalid("snr_db", "at least one SNR point is required");
    for (double s : sc.snr_db)
        if (!std::isfinite(s)) invalid("snr_db", "SNR points must be finite");

    const auto int_in = [&](std::string_view key, long long lo, long long hi) {
        const long long v = to_integer(kv.find(key)->second, key);
        if (v < lo || v > hi)
            invalid(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return static_cast<int>(v);
    };
    if (kv.contains("trials")) sc.trials = int_in("trials", 1, 100000000);
    if (kv.contains("seed")) {
        const std::string_view s = trim(kv["seed"]);
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
            invalid("seed", "expected an unsigned 64-bit integer");
        sc.master_seed = seed;
    }

    DesignOptions& o = sc.options;
    if (kv.contains("max_iters")) o.max_iters = int_in("max_iters", 1, 1000000);
    if (kv.contains("ia_max_iters")) o.ia_max_iters = int_in("ia_max_iters", 1, 1000000);
    if (kv.contains("streams")) o.preset_streams = int_in("streams", 1, 4096);
    if (kv.contains("tol")) {
        o.tol = to_double(kv["tol"], "tol");
        if (!(o.tol >= 0.0)) invalid("tol", "must be nonnegative");
    }
    if (kv.contains("ia_tol")) {
        o.ia_tol = to_double(kv["ia_tol"], "ia_tol");
        if (!(o.ia_tol >= 0.0)) invalid("ia_tol", "must be nonnegative");
    }
    if (kv.contains("lambda")) {
        o.mix_weight = to_double(kv["lambda"], "lambda");
        if (!(o.mix_weight >= 0.0 && o.mix_weight <= 1.0)) invalid("lambda", "must lie in [0, 1]");
    }
    if (kv.contains("gamma_min_db")) {
        o.min_stream_sinr_db = to_double(kv["gamma_min_db"], "gamma_min_db");
        if (!std::isfinite(o.min_stream_sinr_db)) invalid("gamma_min_db", "must be finite");
    }
    if (kv.contains("prune_fraction")) {
        o.prune_fraction = to_double(kv["prune_fraction"], "prune_fraction");
        if (!(o.prune_fraction >= 0.0 && o.prune_fraction < 1.0))
            invalid("prune_fraction", "must lie in [0, 1)");
    }

    const std::string_view schemes = trim(kv["schemes"]);
    if (!schemes.empty()) {
        for (auto name : split_list(schemes)) {
            const auto s = parse_scheme(name);
            if (!s) invalid("schemes", "unknown scheme '" + std::string(name) + "'");
            for (Scheme seen : rc.schemes)
                if (seen == *s) invalid("schemes", "scheme listed twice: '" + std::string(name) + "'");
            rc.schemes.push_back(*s);
        }
    }
    if (rc.schemes.empty()) invalid("schemes", "at least one scheme is required");

    rc.cluster.validate();
    sc.validate();
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace cbsim::cli
