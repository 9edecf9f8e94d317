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

// Per-design cost of each scheme on a three-cell 8x4 cluster at 15 dB, plus
// one full trial (draw, design, evaluate).
#include "cbsim/simulate.hpp"

#include <benchmark/benchmark.h>

using namespace cbsim;

namespace {

DesignProblem fig2_problem(Scheme scheme) {
    const auto cfg = ClusterConfig::uniform(3, 8, 4).at_snr_db(15.0);
    Rng rng(7);
    const auto h = sample_cluster_channels(cfg, rng);
    return make_design_problem(cfg, 1.0, 0.0, h, is_oci_aware(scheme));
}

void BM_Design(benchmark::State& state) {
    const auto scheme = static_cast<Scheme>(state.range(0));
    const auto problem = fig2_problem(scheme);
    DesignOptions opt;
    opt.preset_streams = 2;
    for (auto _ : state) benchmark::DoNotOptimize(design(scheme, problem, opt));
    state.SetLabel(std::string(scheme_name(scheme)));
}
BENCHMARK(BM_Design)->DenseRange(0, 5)->Unit(benchmark::kMicrosecond);

void BM_Trial(benchmark::State& state) {
    const auto cfg = ClusterConfig::uniform(3, 8, 4);
    Scenario sc;
    sc.alpha = 0.8;
    sc.beta = 0.2;
    sc.pilots = PilotCount::finite(10);
    sc.snr_db = {15.0};
    sc.options.preset_streams = 2;
    std::size_t trial = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_trial(cfg, sc, Scheme::wmmse, 0, trial++ % 100));
}
BENCHMARK(BM_Trial)->Unit(benchmark::kMicrosecond);

void BM_ChannelDraw(benchmark::State& state) {
    const auto cfg = ClusterConfig::uniform(4, 4, 2);
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(sample_cluster_channels(cfg, rng));
}
BENCHMARK(BM_ChannelDraw);

} // namespace
BENCHMARK_MAIN();
