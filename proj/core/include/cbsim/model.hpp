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

#ifndef CBSIM_MODEL_HPP
#define CBSIM_MODEL_HPP

#include "cbsim/types.hpp"

#include <optional>
#include <vector>

namespace cbsim {

// Cluster topology: B coordinated BSs, each serving exactly one MT with the
// same index. Antenna counts are per BS (transmit) and per MT (receive).
struct ClusterConfig {
    int num_bs = 1;
    std::vector<int> tx_antennas; // n_T per BS
    std::vector<int> rx_antennas; // n_R per MT
    double power = 1.0;           // per-BS total transmit power P
    double noise = 1.0;           // per-antenna noise variance N0

    static ClusterConfig uniform(int num_bs, int n_tx, int n_rx, double power = 1.0,
                                 double noise = 1.0);

    // Throws ValidationError naming the offending field.
    void validate() const;

    double snr() const { return power / noise; }
    // Copy with N0 set so that P / N0 equals the given SNR (dB).
    ClusterConfig at_snr_db(double snr_db) const;
};

// Pilot count for MMSE channel estimation; "infinite" means perfect CSI.
class PilotCount {
  public:
    static PilotCount infinite() { return PilotCount{}; }
    static PilotCount finite(int count);

    bool is_infinite() const { return !count_.has_value(); }
    int count() const; // throws std::logic_error when infinite

    bool operator==(const PilotCount&) const = default;

  private:
    std::optional<int> count_;
};

// Scheme tuning knobs shared by the iterative designs.
struct DesignOptions {
    int max_iters = 10;
    double tol = 1e-4;
    // Alternating leakage minimization is a stand-in for a non-iterative
    // closed form, so it gets its own, larger budget.
    int ia_max_iters = 200;
    double ia_tol = 1e-9;
    // Preset streams per BS for IA and max-SINR; 0 means max(1, min(nT, nR) / 2).
    int preset_streams = 0;
    double mix_weight = 0.5;       // Reconfigurable: weight on the MMSE part
    double min_stream_sinr_db = 0; // Reconfigurable: stream-drop threshold
    double prune_fraction = 1e-6;  // WMMSE: streams below this * P are dropped
};

struct Scenario {
    double alpha = 1.0;
    double beta = 0.0;
    double nakagami_m = 1.0;
    PilotCount pilots = PilotCount::infinite();
    std::vector<double> snr_db;
    int trials = 100;
    std::uint64_t master_seed = 1;
    DesignOptions options;

    void validate() const;
};

// H[b][l] is the channel from BS l to MT b (n_R[b] x n_T[l]).
using ChannelSet = std::vector<std::vector<CMatrix>>;

struct ChannelRealization {
    ChannelSet actual;
    ChannelSet estimated;
};

struct ReceptionNoise {
    std::vector<CVector> oci;  // g_b
    std::vector<CVector> awgn; // n_b
};

// Entries i.i.d. CN(0, 1 / (nT * nR)).
CMatrix sample_channel(int n_rx, int n_tx, Rng& rng);

// (1 + (Np / nT) * snr)^-1, or 0 for perfect CSI.
double estimation_error_variance(PilotCount pilots, int n_tx, double snr);

ChannelSet sample_cluster_channels(const ClusterConfig& cfg, Rng& rng);

// Estimated = actual + E with E i.i.d. CN(0, estimation_error_variance) per
// link, using the transmitting BS's antenna count.
ChannelSet estimate_channels(const ChannelSet& actual, const ClusterConfig& cfg,
                             PilotCount pilots, double snr, Rng& rng);

// Out-of-cluster interference: |g_q|^2 ~ Gamma(m, beta P / (m nR)), uniform phase.
CVector sample_oci(int n_rx, double beta, double power, double m, Rng& rng);

// i.i.d. CN(0, N0) entries.
CVector sample_awgn(int n_rx, double noise, Rng& rng);

ReceptionNoise sample_reception_noise(const ClusterConfig& cfg, const Scenario& scenario,
                                      Rng& rng);

struct BeamformerSolution;

struct Reception {
    std::vector<CVector> received;  // y_b
    std::vector<CVector> estimates; // U_b^H y_b
};

// Applies the downlink signal model to per-BS symbol vectors s[b] (length d_b).
Reception simulate_reception(const ClusterConfig& cfg, double alpha, const ChannelSet& actual,
                             const BeamformerSolution& solution,
                             const std::vector<CVector>& symbols, const ReceptionNoise& noise);

// sqrt(alpha / (B - 1)) for cross links; 0 when B == 1.
double cross_link_scale(int num_bs, double alpha);

} // namespace cbsim

#endif
