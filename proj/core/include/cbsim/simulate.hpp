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

#ifndef CBSIM_SIMULATE_HPP
#define CBSIM_SIMULATE_HPP

#include "cbsim/metrics.hpp"
#include "cbsim/model.hpp"
#include "cbsim/schemes.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cbsim {

// Counter-mode mix of the tuple into a 64-bit seed.
std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t scheme_index,
                                std::uint64_t snr_index, std::uint64_t trial_index);

// Draws shared by every scheme for a given (snr, trial): the actual channels
// depend on the trial only, estimation errors on (snr, trial).
ChannelRealization draw_realization(const ClusterConfig& cfg, const Scenario& scenario,
                                    std::size_t snr_index, std::size_t trial_index);

struct TrialResult {
    Scheme scheme = Scheme::ia;
    double snr_db = 0;
    int trial = 0;
    double sum_rate = 0;
    std::vector<int> streams;
    int iterations = 0;
    double residual_leakage = 0; // IA only
    bool failed = false;
    std::string error;
};

struct Aggregate {
    Scheme scheme = Scheme::ia;
    double snr_db = 0;
    double mean = 0;
    double stderr_ = 0;
    int count = 0;
    int excluded = 0;
};

struct ResultTable {
    // Canonical order: scheme (as requested), SNR (grid order), trial.
    std::vector<TrialResult> trials;
    std::vector<Aggregate> aggregates;
    double alpha = 0;
    double beta = 0;
    double nakagami_m = 1;
    PilotCount pilots = PilotCount::infinite();

    const Aggregate& aggregate(Scheme scheme, double snr_db) const;
    int failures() const;
};

TrialResult run_trial(const ClusterConfig& cfg, const Scenario& scenario, Scheme scheme,
                      std::size_t snr_index, std::size_t trial_index);

// workers <= 0 picks std::thread::hardware_concurrency().
ResultTable run_sweep(const ClusterConfig& cfg, const Scenario& scenario,
                      const std::vector<Scheme>& schemes, int workers = 1);

// Mean and standard error over non-failed trials, in canonical order.
std::vector<Aggregate> aggregate_trials(const std::vector<TrialResult>& trials);

} // namespace cbsim

#endif
