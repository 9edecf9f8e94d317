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
#include "cli/csv.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cbsim;
using namespace cbsim::cli;

namespace fs = std::filesystem;

namespace {

constexpr const char* kThreeCell = "B=3 nT=8 nR=4 alpha=1.0 beta=0.0 np=inf\n"
                              "snr_db = 0,5,10,15,20,25,30\n"
                              "schemes = ia, wmmse\n";

fs::path temp_file(const std::string& name, const std::string& body) {
    const fs::path p = fs::temp_directory_path() / ("cbsim_test_" + name);
    std::ofstream(p) << body;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Config, ThreeCellScenario) {
    const auto rc = parse_config(kThreeCell);
    EXPECT_EQ(rc.cluster.num_bs, 3);
    EXPECT_EQ(rc.cluster.tx_antennas, std::vector<int>(3, 8));
    EXPECT_EQ(rc.cluster.rx_antennas, std::vector<int>(3, 4));
    EXPECT_EQ(rc.scenario.alpha, 1.0);
    EXPECT_EQ(rc.scenario.beta, 0.0);
    EXPECT_TRUE(rc.scenario.pilots.is_infinite());
    EXPECT_EQ(rc.scenario.snr_db.size(), 7u);
    EXPECT_EQ(rc.schemes, (std::vector<Scheme>{Scheme::ia, Scheme::wmmse}));
}

TEST(Config, Defaults) {
    const auto rc = parse_config(kThreeCell);
    EXPECT_EQ(rc.scenario.options.max_iters, 10);
    EXPECT_EQ(rc.scenario.trials, 100);
    EXPECT_EQ(rc.scenario.nakagami_m, 1.0);
    EXPECT_EQ(rc.scenario.options.mix_weight, 0.5);
    EXPECT_EQ(rc.scenario.options.min_stream_sinr_db, 0.0);
    EXPECT_EQ(rc.scenario.options.tol, 1e-4);
}

TEST(Config, OptionalKeysAndLists) {
    const auto rc = parse_config("# comment\nB=2\nnT=4,2\nnR=2 # trailing\nalpha=0.9 beta=0.1\n"
                                 "np=10 m=2.5 P=2 trials=7 seed=99 max_iters=5 tol=1e-6\n"
                                 "streams=1 lambda=0.3 gamma_min_db=-3 prune_fraction=1e-5\n"
                                 "ia_max_iters=50 ia_tol=1e-7\n"
                                 "snr_db=22.5\nschemes=reconfigurable\n");
    EXPECT_EQ(rc.cluster.tx_antennas, (std::vector<int>{4, 2}));
    EXPECT_EQ(rc.cluster.power, 2.0);
    EXPECT_EQ(rc.scenario.pilots.count(), 10);
    EXPECT_EQ(rc.scenario.nakagami_m, 2.5);
    EXPECT_EQ(rc.scenario.trials, 7);
    EXPECT_EQ(rc.scenario.master_seed, 99u);
    EXPECT_EQ(rc.scenario.options.max_iters, 5);
    EXPECT_EQ(rc.scenario.options.tol, 1e-6);
    EXPECT_EQ(rc.scenario.options.preset_streams, 1);
    EXPECT_EQ(rc.scenario.options.mix_weight, 0.3);
    EXPECT_EQ(rc.scenario.options.min_stream_sinr_db, -3.0);
    EXPECT_EQ(rc.scenario.options.prune_fraction, 1e-5);
    EXPECT_EQ(rc.scenario.options.ia_max_iters, 50);
    EXPECT_EQ(rc.scenario.options.ia_tol, 1e-7);
}

TEST(Config, ValidationErrors) {
    const std::string base = "B=3 nT=8 nR=4 beta=0 np=inf snr_db=10 schemes=ia\n";
    EXPECT_THROW(parse_config(base + "alpha=1.5\n"), ValidationError);
    try {
        parse_config(base + "alpha=1.5\n");
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
    }
    EXPECT_THROW(parse_config("B=3 nT=8 nR=4 alpha=1 beta=0 np=inf snr_db=10 schemes=\n"), ValidationError);
    EXPECT_THROW(parse_config(base + "alpha=1 colour=red\n"), ValidationError);
    EXPECT_THROW(parse_config("B=3 nT=8 nR=4 alpha=1 beta=0 np=inf snr_db=10 schemes=jt\n"), ValidationError);
    EXPECT_THROW(parse_config("B=3 nT=8 alpha=1 beta=0 np=inf snr_db=10 schemes=ia\n"), ValidationError);
    EXPECT_THROW(parse_config(base + "alpha=1 np=0\n"), std::exception);
}

TEST(Config, ParseErrorsCarryLineNumbers) {
    try {
        parse_config("B=3\nnT=8\nthis line has no equals sign\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
    }
    EXPECT_THROW(parse_config("B=3\nB=4\n"), ParseError);
    // a well-formed line with a bad value names the key instead
    EXPECT_THROW(parse_config("B=three nT=8 nR=4 alpha=1 beta=0 np=inf snr_db=10 schemes=ia\n"), ValidationError);
}

TEST(Config, DoubleList) {
    EXPECT_EQ(parse_double_list("0, 5,10", "snr_db"), (std::vector<double>{0, 5, 10}));
    EXPECT_ANY_THROW(parse_double_list("1,,2", "snr_db"));
}

TEST(Config, ExampleConfigsParseAndRun) {
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(CBSIM_CONFIG_DIR)) {
        if (entry.path().extension() != ".cfg") continue;
        ++seen;
        auto rc = load_config(entry.path().string());
        rc.scenario.trials = 1;
        rc.scenario.snr_db.resize(1);
        const auto t = run_sweep(rc.cluster, rc.scenario, rc.schemes, 0);
        EXPECT_EQ(t.failures(), 0) << entry.path();
    }
    EXPECT_GE(seen, 4);
}

TEST(Csv, FormatNumber) {
    EXPECT_EQ(format_number(0.0), "0");
    EXPECT_EQ(format_number(2.186135772), "2.18613577");
    EXPECT_EQ(format_number(-12.5), "-12.5");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
}

TEST(Csv, EmptyTableIsHeaderOnly) {
    ResultTable t;
    EXPECT_EQ(emit_csv(t), std::string(kResultHeader) + "\n");
}

TEST(Csv, SingleTrialThreeRows) {
    const auto cfg = ClusterConfig::uniform(2, 2, 2);
    Scenario sc;
    sc.snr_db = {10.0};
    sc.trials = 1;
    const auto rows = parse_csv(emit_csv(run_sweep(cfg, sc, {Scheme::ia})));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].trial, "0");
    EXPECT_EQ(rows[1].trial, "mean");
    EXPECT_EQ(rows[2].trial, "stderr");
    EXPECT_EQ(rows[2].sum_rate, 0.0);
    EXPECT_EQ(rows[0].sum_rate, rows[1].sum_rate);
}

TEST(Csv, RoundTrip) {
    const auto cfg = ClusterConfig::uniform(3, 4, 2);
    Scenario sc;
    sc.snr_db = {0.0, 12.5};
    sc.trials = 5;
    sc.alpha = 0.8;
    sc.beta = 0.2;
    sc.nakagami_m = 1.5;
    sc.pilots = PilotCount::finite(10);
    const auto t = run_sweep(cfg, sc, {Scheme::wmmse, Scheme::full_reuse}, 2);
    const auto rows = parse_csv(emit_csv(t));
    ASSERT_EQ(rows.size(), t.trials.size() + 2 * t.aggregates.size());
    std::size_t next = 0;
    for (const auto& r : rows) {
        EXPECT_EQ(r.alpha, 0.8);
        EXPECT_EQ(r.beta, 0.2);
        EXPECT_EQ(r.m, 1.5);
        EXPECT_EQ(r.np, "10");
        if (r.trial == "mean" || r.trial == "stderr") continue;
        const auto& want = t.trials[next++];
        EXPECT_EQ(r.scheme, scheme_name(want.scheme));
        EXPECT_EQ(r.snr_db, want.snr_db);
        // nine significant digits bound the relative error by 5e-9
        EXPECT_NEAR(r.sum_rate, want.sum_rate, 5e-9 * std::abs(want.sum_rate));
    }
    EXPECT_EQ(next, t.trials.size());
}

TEST(Csv, ByteIdenticalAcrossRuns) {
    const auto cfg = ClusterConfig::uniform(2, 2, 2);
    Scenario sc;
    sc.snr_db = {5.0};
    sc.trials = 3;
    EXPECT_EQ(emit_csv(run_sweep(cfg, sc, {Scheme::max_sinr}, 1)),
              emit_csv(run_sweep(cfg, sc, {Scheme::max_sinr}, 3)));
}

TEST(Commands, BoundsRowsAndLimits) {
    const auto out = fs::temp_directory_path() / "cbsim_test_bounds.csv";
    std::ostringstream log;
    BoundsArgs args;
    args.snr_db = {-INFINITY, 15.0};
    args.alpha = 1.0;
    args.beta = 0.25;
    args.out_path = out.string();
    ASSERT_EQ(bounds_command(args, log), kSuccess);
    const std::string text = slurp(out);
    EXPECT_NE(text.find("-inf,0,0,0,0\n"), std::string::npos);
    EXPECT_NE(text.find("15,1.66417719,2.18613577,4.37227154,6.03644873\n"), std::string::npos);
    args.alpha = 2.0;
    EXPECT_EQ(bounds_command(args, log), kValidationError);
}

TEST(Commands, RunWritesCsvAndHonoursOverrides) {
    const auto cfg = temp_file("run.cfg", std::string(kThreeCell) + "trials=50\n");
    const auto out = fs::temp_directory_path() / "cbsim_test_run.csv";
    std::ostringstream log;
    RunArgs args;
    args.config_path = cfg.string();
    args.out_path = out.string();
    args.seed = 5;
    args.trials = 2;
    ASSERT_EQ(run_command(args, log), kSuccess) << log.str();
    const auto rows = parse_csv(slurp(out));
    EXPECT_EQ(rows.size(), 2u * 7u * (2u + 2u));
}

TEST(Commands, ValidationExitCodes) {
    std::ostringstream log;
    const auto bad = temp_file("bad.cfg", "B=2 nT=2 nR=2 alpha=1.5 beta=0 np=inf snr_db=0 schemes=ia\n");
    EXPECT_EQ(validate_command(bad.string(), log), kValidationError);
    EXPECT_NE(log.str().find("alpha"), std::string::npos);
    const auto junk = temp_file("junk.cfg", "not a config\n");
    EXPECT_EQ(validate_command(junk.string(), log), kValidationError);
    EXPECT_EQ(validate_command("/nonexistent/cbsim.cfg", log), kValidationError);
    RunArgs args;
    args.config_path = bad.string();
    args.out_path = "-";
    EXPECT_EQ(run_command(args, log), kValidationError);
    const auto good = temp_file("good.cfg", kThreeCell);
    EXPECT_EQ(validate_command(good.string(), log), kSuccess);
}

TEST(Commands, WorkersEnvironmentOverride) {
    unsetenv("CBSIM_WORKERS");
    EXPECT_EQ(effective_workers(3), 3);
    setenv("CBSIM_WORKERS", "5", 1);
    EXPECT_EQ(effective_workers(3), 5);
    setenv("CBSIM_WORKERS", "junk", 1);
    EXPECT_EQ(effective_workers(3), 3);
    unsetenv("CBSIM_WORKERS");
}
