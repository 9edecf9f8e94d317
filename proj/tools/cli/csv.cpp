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

#include "cli/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace cbsim::cli {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::general, 9);
    return {buf.data(), res.ptr};
}

namespace {

std::string pilots_text(PilotCount p) {
    return p.is_infinite() ? "inf" : std::to_string(p.count());
}

double parse_field(std::string_view text, int line) {
    if (text == "nan") return std::nan("");
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ValidationError("csv line " + std::to_string(line) + ": bad number '" +
                              std::string(text) + "'");
    return v;
}

} // namespace

std::string emit_csv(const ResultTable& table) {
    std::string out(kResultHeader);
    out += '\n';
    const std::string prefix_tail = format_number(table.alpha) + ',' + format_number(table.beta) +
                                    ',' + format_number(table.nakagami_m) + ',' +
                                    pilots_text(table.pilots) + ',';
    const auto row = [&](Scheme s, double snr, const std::string& trial, double value) {
        out += scheme_name(s);
        out += ',';
        out += format_number(snr);
        out += ',';
        out += prefix_tail;
        out += trial;
        out += ',';
        out += format_number(value);
        out += '\n';
    };
    std::size_t next_trial = 0;
    for (const Aggregate& a : table.aggregates) {
        while (next_trial < table.trials.size() && table.trials[next_trial].scheme == a.scheme &&
               table.trials[next_trial].snr_db == a.snr_db) {
            const TrialResult& t = table.trials[next_trial++];
            row(t.scheme, t.snr_db, std::to_string(t.trial), t.sum_rate);
        }
        row(a.scheme, a.snr_db, "mean", a.count > 0 ? a.mean : std::nan(""));
        row(a.scheme, a.snr_db, "stderr", a.count > 0 ? a.stderr_ : std::nan(""));
    }
    return out;
}

std::string emit_bounds_csv(const std::vector<BoundsRow>& rows) {
    std::string out(kBoundsHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += format_number(r.snr_db) + ',' + format_number(r.bounds.full_reuse) + ',' +
               format_number(r.bounds.orthogonal) + ',' + format_number(r.bounds.ia) + ',' +
               format_number(r.bounds.jt) + '\n';
    }
    return out;
}

std::vector<CsvRow> parse_csv(std::string_view text) {
    std::vector<CsvRow> rows;
    int line = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view l = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line;
        if (line == 1) {
            if (l != kResultHeader) throw ValidationError("csv: unexpected header");
            continue;
        }
        if (l.empty()) continue;
        std::vector<std::string_view> f;
        while (true) {
            const auto c = l.find(',');
            f.push_back(l.substr(0, c));
            if (c == std::string_view::npos) break;
            l.remove_prefix(c + 1);
        }
        if (f.size() != 8)
            throw ValidationError("csv line " + std::to_string(line) + ": expected 8 fields");
        CsvRow r;
        r.scheme = f[0];
        r.snr_db = parse_field(f[1], line);
        r.alpha = parse_field(f[2], line);
        r.beta = parse_field(f[3], line);
        r.m = parse_field(f[4], line);
        r.np = f[5];
        r.trial = f[6];
        r.sum_rate = parse_field(f[7], line);
        rows.push_back(std::move(r));
    }
    if (line == 0) throw ValidationError("csv: missing header");
    return rows;
}

} // namespace cbsim::cli
