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
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <unordered_set>

using namespace cbsim;

namespace {

bool same_trial(const TrialResult& a, const TrialResult& b) {
    const bool rate = (std::isnan(a.sum_rate) && std::isnan(b.sum_rate)) || a.sum_rate == b.sum_rate;
    return a.scheme == b.scheme && a.snr_db == b.snr_db && a.trial == b.trial && rate &&
           a.streams == b.streams && a.iterations == b.iterations &&
           a.residual_leakage == b.residual_leakage && a.failed == b.failed;
}

const std::vector<Scheme> kAll = {Scheme::ia,         Scheme::max_sinr,  Scheme::wmmse,
                                  Scheme::reconfigurable, Scheme::full_reuse, Scheme::orthogonal};

} // namespace

TEST(TrialSeed, DeterministicAndCollisionFree) {
    EXPECT_EQ(derive_trial_seed(1, 2, 3, 4), derive_trial_seed(1, 2, 3, 4));
    EXPECT_NE(derive_trial_seed(1, 2, 3, 4), derive_trial_seed(1, 2, 4, 3));
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(1 << 21);
    for (std::uint64_t scheme = 0; scheme < 4; ++scheme)
        for (std::uint64_t snr = 0; snr < 10; ++snr)
            for (std::uint64_t trial = 0; trial < 25000; ++trial)
                seen.insert(derive_trial_seed(42, scheme, snr, trial));
    EXPECT_EQ(seen.size(), 1000000u);
}

TEST(DrawRealization, PairedAcrossCallsAndSharedAcrossSnr) {
    const auto cfg = ClusterConfig::uniform(3, 4, 2);
    Scenario sc;
    sc.snr_db = {0.0, 10.0};
    sc.pilots = PilotCount::finite(10);
    const auto a = draw_realization(cfg, sc, 1, 7);
    const auto b = draw_realization(cfg, sc, 1, 7);
    const auto c = draw_realization(cfg, sc, 0, 7);
    for (int i = 0; i < 3; ++i)
        for (int l = 0; l < 3; ++l) {
            EXPECT_EQ(a.actual[i][l], b.actual[i][l]);
            EXPECT_EQ(a.estimated[i][l], b.estimated[i][l]);
            EXPECT_EQ(a.actual[i][l], c.actual[i][l]);
            EXPECT_NE(a.estimated[i][l], c.estimated[i][l]);
        }
}

TEST(RunTrial, SingleCellPerfectCsiOracles) {
    const auto cfg = ClusterConfig::uniform(1, 4, 3);
    Scenario sc;
    sc.snr_db = {5.0, 20.0};
    sc.options.max_iters = 50;
    sc.options.tol = 1e-10;
    for (std::size_t si = 0; si < sc.snr_db.size(); ++si)
        for (std::size_t t = 0; t < 5; ++t) {
            const auto at = cfg.at_snr_db(sc.snr_db[si]);
            const auto r = draw_realization(cfg, sc, si, t);
            const double wf = oracle::waterfilling_capacity(r.actual[0][0], 1.0, at.noise);
            const double eq = oracle::equal_power_eigen_rate(r.actual[0][0], 1.0, at.noise, 3);
            EXPECT_NEAR(run_trial(cfg, sc, Scheme::wmmse, si, t).sum_rate, wf, 1e-3);
            EXPECT_LE(run_trial(cfg, sc, Scheme::reconfigurable, si, t).sum_rate, wf + 1e-9);
            EXPECT_NEAR(run_trial(cfg, sc, Scheme::full_reuse, si, t).sum_rate, eq, 1e-9);
            EXPECT_NEAR(run_trial(cfg, sc, Scheme::orthogonal, si, t).sum_rate, eq, 1e-9);
            EXPECT_LE(run_trial(cfg, sc, Scheme::ia, si, t).sum_rate, wf + 1e-9);
        }
}

TEST(RunTrial, ImperfectCsiCostsRateOnAverage) {
    const auto cfg = ClusterConfig::uniform(3, 8, 4);
    Scenario perfect;
    perfect.snr_db = {15.0};
    perfect.trials = 100;
    Scenario noisy = perfect;
    noisy.pilots = PilotCount::finite(10);
    for (Scheme s : {Scheme::ia, Scheme::wmmse}) {
        const double a = run_sweep(cfg, perfect, {s}, 0).aggregate(s, 15.0).mean;
        const double b = run_sweep(cfg, noisy, {s}, 0).aggregate(s, 15.0).mean;
        EXPECT_LE(b, a) << scheme_name(s);
    }
}

TEST(RunTrial, BitIdenticalRepeats) {
    const auto cfg = ClusterConfig::uniform(3, 4, 2);
    Scenario sc;
    sc.snr_db = {10.0};
    sc.beta = 0.1;
    sc.pilots = PilotCount::finite(10);
    for (Scheme s : kAll) EXPECT_TRUE(same_trial(run_trial(cfg, sc, s, 0, 3), run_trial(cfg, sc, s, 0, 3)));
}

TEST(RunTrial, IterationsWithinCap) {
    const auto cfg = ClusterConfig::uniform(4, 4, 2);
    Scenario sc;
    sc.snr_db = {22.5};
    sc.alpha = 0.9;
    sc.beta = 0.1;
    sc.pilots = PilotCount::finite(10);
    for (Scheme s : {Scheme::max_sinr, Scheme::wmmse, Scheme::reconfigurable})
        for (std::size_t t = 0; t < 5; ++t) EXPECT_LE(run_trial(cfg, sc, s, 0, t).iterations, 10);
}

TEST(RunSweep, SinglePointEqualsRunTrial) {
    const auto cfg = ClusterConfig::uniform(2, 3, 2);
    Scenario sc;
    sc.snr_db = {12.0};
    sc.trials = 1;
    const auto table = run_sweep(cfg, sc, {Scheme::max_sinr});
    ASSERT_EQ(table.trials.size(), 1u);
    EXPECT_TRUE(same_trial(table.trials[0], run_trial(cfg, sc, Scheme::max_sinr, 0, 0)));
    EXPECT_EQ(table.aggregates.size(), 1u);
    EXPECT_EQ(table.aggregates[0].stderr_, 0.0);
}

TEST(RunSweep, DeterministicAcrossWorkerCounts) {
    const auto cfg = ClusterConfig::uniform(3, 4, 2);
    Scenario sc;
    sc.snr_db = {0.0, 10.0, 20.0};
    sc.trials = 8;
    sc.alpha = 0.8;
    sc.beta = 0.2;
    sc.pilots = PilotCount::finite(10);
    const auto serial = run_sweep(cfg, sc, kAll, 1);
    for (int w : {2, 3, 7, 0}) {
        const auto par = run_sweep(cfg, sc, kAll, w);
        ASSERT_EQ(par.trials.size(), serial.trials.size());
        for (std::size_t i = 0; i < par.trials.size(); ++i)
            EXPECT_TRUE(same_trial(par.trials[i], serial.trials[i])) << "workers " << w << " row " << i;
        for (std::size_t i = 0; i < par.aggregates.size(); ++i) {
            EXPECT_EQ(par.aggregates[i].mean, serial.aggregates[i].mean);
            EXPECT_EQ(par.aggregates[i].stderr_, serial.aggregates[i].stderr_);
        }
    }
}

TEST(RunSweep, CanonicalOrderAndAggregates) {
    const auto cfg = ClusterConfig::uniform(2, 2, 2);
    Scenario sc;
    sc.snr_db = {10.0, 0.0};
    sc.trials = 4;
    const std::vector<Scheme> schemes = {Scheme::wmmse, Scheme::ia};
    const auto t = run_sweep(cfg, sc, schemes, 3);
    std::size_t i = 0;
    for (Scheme s : schemes)
        for (double snr : sc.snr_db)
            for (int k = 0; k < 4; ++k, ++i) {
                EXPECT_EQ(t.trials[i].scheme, s);
                EXPECT_EQ(t.trials[i].snr_db, snr);
                EXPECT_EQ(t.trials[i].trial, k);
            }
    for (Scheme s : schemes)
        for (double snr : sc.snr_db) {
            double sum = 0.0;
            for (const auto& r : t.trials)
                if (r.scheme == s && r.snr_db == snr) sum += r.sum_rate;
            EXPECT_NEAR(t.aggregate(s, snr).mean, sum / 4.0, 1e-12);
        }
    EXPECT_THROW(t.aggregate(Scheme::orthogonal, 0.0), std::out_of_range);
}

TEST(RunSweep, PairedAcrossSchemes) {
    // with alpha = 0 and one stream per BS, IA and max-SINR both reduce to
    // the dominant own-link mode, so paired trials must agree
    const auto cfg = ClusterConfig::uniform(2, 2, 2);
    Scenario sc;
    sc.alpha = 0.0;
    sc.snr_db = {10.0};
    sc.trials = 5;
    sc.options.preset_streams = 1;
    const auto t = run_sweep(cfg, sc, {Scheme::ia, Scheme::max_sinr}, 2);
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(t.trials[k].sum_rate, t.trials[5 + k].sum_rate, 1e-6);
}

TEST(RunSweep, MonotoneInSnrWithPerfectCsi) {
    const auto cfg = ClusterConfig::uniform(3, 4, 2);
    Scenario sc;
    sc.snr_db = {0.0, 10.0, 20.0, 30.0};
    sc.trials = 30;
    const auto t = run_sweep(cfg, sc, kAll, 0);
    for (Scheme s : kAll)
        for (std::size_t i = 1; i < sc.snr_db.size(); ++i) {
            const auto& lo = t.aggregate(s, sc.snr_db[i - 1]);
            const auto& hi = t.aggregate(s, sc.snr_db[i]);
            EXPECT_GE(hi.mean, lo.mean - hi.stderr_) << scheme_name(s) << " at " << sc.snr_db[i];
        }
}

TEST(Aggregate, ExcludesFailures) {
    std::vector<TrialResult> rows(3);
    for (int i = 0; i < 3; ++i) {
        rows[i].scheme = Scheme::wmmse;
        rows[i].snr_db = 5.0;
        rows[i].trial = i;
        rows[i].sum_rate = 1.0 + i;
    }
    rows[1].failed = true;
    rows[1].sum_rate = std::nan("");
    const auto a = aggregate_trials(rows);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].count, 2);
    EXPECT_EQ(a[0].excluded, 1);
    EXPECT_DOUBLE_EQ(a[0].mean, 2.0);
    EXPECT_DOUBLE_EQ(a[0].stderr_, 1.0);
}

TEST(RunSweep, RejectsEmptySchemeList) {
    Scenario sc;
    sc.snr_db = {0.0};
    EXPECT_THROW(run_sweep(ClusterConfig::uniform(1, 1, 1), sc, {}), ValidationError);
}
