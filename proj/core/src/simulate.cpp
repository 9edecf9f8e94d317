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

#include "cbsim/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace cbsim {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Draw streams for draw_realization; scheme indices in the seed tuple
// start above these.
constexpr std::uint64_t kChannelStream = 0x6368616eULL;
constexpr std::uint64_t kEstimationStream = 0x65737469ULL;
constexpr std::uint64_t kAnySnr = ~0ULL;

} // namespace

std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t scheme_index,
                                std::uint64_t snr_index, std::uint64_t trial_index) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ scheme_index);
    h = splitmix64(h ^ snr_index);
    h = splitmix64(h ^ trial_index);
    return h;
}

ChannelRealization draw_realization(const ClusterConfig& cfg, const Scenario& scenario,
                                    std::size_t snr_index, std::size_t trial_index) {
    if (snr_index >= scenario.snr_db.size()) throw ValidationError("snr index out of range");
    const ClusterConfig at = cfg.at_snr_db(scenario.snr_db[snr_index]);
    ChannelRealization r;
    Rng channel_rng(derive_trial_seed(scenario.master_seed, kChannelStream, kAnySnr, trial_index));
    r.actual = sample_cluster_channels(at, channel_rng);
    Rng error_rng(derive_trial_seed(scenario.master_seed, kEstimationStream, snr_index, trial_index));
    r.estimated = estimate_channels(r.actual, at, scenario.pilots, at.snr(), error_rng);
    return r;
}

TrialResult run_trial(const ClusterConfig& cfg, const Scenario& scenario, Scheme scheme,
                      std::size_t snr_index, std::size_t trial_index) {
    TrialResult out;
    out.scheme = scheme;
    out.snr_db = scenario.snr_db.at(snr_index);
    out.trial = static_cast<int>(trial_index);
    try {
        const ClusterConfig at = cfg.at_snr_db(out.snr_db);
        const ChannelRealization r = draw_realization(cfg, scenario, snr_index, trial_index);
        const DesignProblem problem =
            make_design_problem(at, scenario.alpha, scenario.beta, r.estimated, is_oci_aware(scheme));
        const BeamformerSolution solution = design(scheme, problem, scenario.options);
        out.sum_rate = cluster_sum_rate(at, scenario.alpha, scenario.beta, r.actual, solution).value;
        for (int b = 0; b < solution.num_bs(); ++b) out.streams.push_back(solution.streams(b));
        out.iterations = solution.trace.iterations;
        if (scheme == Scheme::ia && !solution.trace.objective.empty())
            out.residual_leakage = solution.trace.objective.back();
    } catch (const NumericalFailure& e) {
        out.failed = true;
        out.error = e.what();
        out.sum_rate = std::nan("");
    }
    return out;
}

std::vector<Aggregate> aggregate_trials(const std::vector<TrialResult>& trials) {
    std::vector<Aggregate> out;
    std::size_t i = 0;
    while (i < trials.size()) {
        std::size_t j = i;
        while (j < trials.size() && trials[j].scheme == trials[i].scheme &&
               trials[j].snr_db == trials[i].snr_db)
            ++j;
        Aggregate a;
        a.scheme = trials[i].scheme;
        a.snr_db = trials[i].snr_db;
        double sum = 0.0;
        for (std::size_t k = i; k < j; ++k) {
            if (trials[k].failed) {
                ++a.excluded;
                continue;
            }
            sum += trials[k].sum_rate;
            ++a.count;
        }
        if (a.count > 0) a.mean = sum / a.count;
        if (a.count > 1) {
            double ss = 0.0;
            for (std::size_t k = i; k < j; ++k)
                if (!trials[k].failed) ss += (trials[k].sum_rate - a.mean) * (trials[k].sum_rate - a.mean);
            a.stderr_ = std::sqrt(ss / (a.count - 1) / a.count);
        }
        out.push_back(a);
        i = j;
    }
    return out;
}

const Aggregate& ResultTable::aggregate(Scheme scheme, double snr_db) const {
    for (const auto& a : aggregates)
        if (a.scheme == scheme && a.snr_db == snr_db) return a;
    throw std::out_of_range("no aggregate for the requested scheme and SNR");
}

int ResultTable::failures() const {
    return static_cast<int>(std::count_if(trials.begin(), trials.end(),
                                          [](const TrialResult& t) { return t.failed; }));
}

ResultTable run_sweep(const ClusterConfig& cfg, const Scenario& scenario,
                      const std::vector<Scheme>& schemes, int workers) {
    cfg.validate();
    scenario.validate();
    if (schemes.empty()) throw ValidationError("schemes: at least one scheme is required");

    const std::size_t n_snr = scenario.snr_db.size();
    const auto n_trials = static_cast<std::size_t>(scenario.trials);
    const std::size_t total = schemes.size() * n_snr * n_trials;

    ResultTable table;
    table.alpha = scenario.alpha;
    table.beta = scenario.beta;
    table.nakagami_m = scenario.nakagami_m;
    table.pilots = scenario.pilots;
    table.trials.resize(total);

    // Slot index is the canonical position, so the output is independent of
    // which worker ran which task.
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> errored{false};
    const auto work = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            const std::size_t trial = idx % n_trials;
            const std::size_t snr = (idx / n_trials) % n_snr;
            const std::size_t sch = idx / (n_trials * n_snr);
            try {
                table.trials[idx] = run_trial(cfg, scenario, schemes[sch], snr, trial);
            } catch (...) {
                if (!errored.exchange(true)) first_error = std::current_exception();
                next = total;
            }
        }
    };

    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(workers), std::max<std::size_t>(total, 1));
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    table.aggregates = aggregate_trials(table.trials);
    return table;
}

} // namespace cbsim
