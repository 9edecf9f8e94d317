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

#include "cbsim/model.hpp"

#include "cbsim/schemes.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cbsim {

namespace {

cplx complex_gaussian(double variance, Rng& rng) {
    std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

} // namespace

ClusterConfig ClusterConfig::uniform(int num_bs, int n_tx, int n_rx, double power, double noise) {
    ClusterConfig cfg;
    cfg.num_bs = num_bs;
    cfg.tx_antennas.assign(static_cast<std::size_t>(std::max(num_bs, 0)), n_tx);
    cfg.rx_antennas.assign(static_cast<std::size_t>(std::max(num_bs, 0)), n_rx);
    cfg.power = power;
    cfg.noise = noise;
    return cfg;
}

void ClusterConfig::validate() const {
    require(num_bs >= 1, "B: at least one base station is required");
    require(tx_antennas.size() == static_cast<std::size_t>(num_bs),
            "nT: expected one antenna count per base station");
    require(rx_antennas.size() == static_cast<std::size_t>(num_bs),
            "nR: expected one antenna count per mobile terminal");
    for (int n : tx_antennas) require(n >= 1, "nT: antenna counts must be positive");
    for (int n : rx_antennas) require(n >= 1, "nR: antenna counts must be positive");
    require(power > 0 && std::isfinite(power), "P: transmit power must be positive");
    require(noise > 0 && std::isfinite(noise), "N0: noise variance must be positive");
}

ClusterConfig ClusterConfig::at_snr_db(double snr_db) const {
    ClusterConfig out = *this;
    out.noise = power / std::pow(10.0, snr_db / 10.0);
    return out;
}

PilotCount PilotCount::finite(int count) {
    if (count < 1) throw ValidationError("np: pilot count must be >= 1 or inf");
    PilotCount p;
    p.count_ = count;
    return p;
}

int PilotCount::count() const {
    if (!count_) throw std::logic_error("infinite pilot count has no finite value");
    return *count_;
}

void Scenario::validate() const {
    require(alpha >= 0.0 && alpha <= 1.0, "alpha: must lie in [0, 1]");
    require(beta >= 0.0 && beta <= 1.0, "beta: must lie in [0, 1]");
    require(nakagami_m >= 0.5 && std::isfinite(nakagami_m), "m: Nakagami shape must be >= 0.5");
    require(trials >= 1, "trials: must be >= 1");
    for (double s : snr_db) require(!std::isnan(s), "snr_db: NaN is not a valid SNR");
    require(options.max_iters >= 1, "max_iters: must be >= 1");
    require(options.ia_max_iters >= 1, "ia_max_iters: must be >= 1");
    require(options.tol >= 0.0, "tol: must be nonnegative");
    require(options.preset_streams >= 0, "streams: must be >= 0");
    require(options.mix_weight >= 0.0 && options.mix_weight <= 1.0, "lambda: must lie in [0, 1]");
    require(std::isfinite(options.min_stream_sinr_db), "gamma_min_db: must be finite");
}

CMatrix sample_channel(int n_rx, int n_tx, Rng& rng) {
    require(n_rx >= 1 && n_tx >= 1, "sample_channel: dimensions must be positive");
    const double variance = 1.0 / (static_cast<double>(n_rx) * n_tx);
    CMatrix h(n_rx, n_tx);
    // column-major fill keeps the draw order fixed
    for (Eigen::Index j = 0; j < h.cols(); ++j)
        for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, j) = complex_gaussian(variance, rng);
    return h;
}

double estimation_error_variance(PilotCount pilots, int n_tx, double snr) {
    require(n_tx >= 1, "estimation_error_variance: nT must be positive");
    require(snr >= 0.0, "estimation_error_variance: SNR must be nonnegative");
    if (pilots.is_infinite()) return 0.0;
    const double rho = static_cast<double>(pilots.count()) / n_tx;
    return 1.0 / (1.0 + rho * snr);
}

ChannelSet sample_cluster_channels(const ClusterConfig& cfg, Rng& rng) {
    cfg.validate();
    const auto b = static_cast<std::size_t>(cfg.num_bs);
    ChannelSet h(b, std::vector<CMatrix>(b));
    for (std::size_t mt = 0; mt < b; ++mt)
        for (std::size_t bs = 0; bs < b; ++bs)
            h[mt][bs] = sample_channel(cfg.rx_antennas[mt], cfg.tx_antennas[bs], rng);
    return h;
}

ChannelSet estimate_channels(const ChannelSet& actual, const ClusterConfig& cfg,
                             PilotCount pilots, double snr, Rng& rng) {
    if (pilots.is_infinite()) return actual;
    ChannelSet est = actual;
    for (std::size_t mt = 0; mt < est.size(); ++mt) {
        for (std::size_t bs = 0; bs < est[mt].size(); ++bs) {
            const double var = estimation_error_variance(pilots, cfg.tx_antennas[bs], snr);
            CMatrix& h = est[mt][bs];
            for (Eigen::Index j = 0; j < h.cols(); ++j)
                for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, j) += complex_gaussian(var, rng);
        }
    }
    return est;
}

CVector sample_oci(int n_rx, double beta, double power, double m, Rng& rng) {
    require(n_rx >= 1, "sample_oci: nR must be positive");
    require(m >= 0.5, "sample_oci: Nakagami shape m must be >= 0.5");
    require(beta >= 0.0 && beta <= 1.0, "sample_oci: beta must lie in [0, 1]");
    require(power > 0.0, "sample_oci: power must be positive");
    CVector g = CVector::Zero(n_rx);
    if (beta == 0.0) return g;
    std::gamma_distribution<double> gamma(m, beta * power / (m * n_rx));
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    for (Eigen::Index q = 0; q < g.size(); ++q) {
        const double amplitude = std::sqrt(gamma(rng));
        g(q) = std::polar(amplitude, phase(rng));
    }
    return g;
}

CVector sample_awgn(int n_rx, double noise, Rng& rng) {
    require(n_rx >= 1, "sample_awgn: nR must be positive");
    require(noise >= 0.0, "sample_awgn: noise variance must be nonnegative");
    CVector n = CVector::Zero(n_rx);
    if (noise == 0.0) return n;
    for (Eigen::Index q = 0; q < n.size(); ++q) n(q) = complex_gaussian(noise, rng);
    return n;
}

ReceptionNoise sample_reception_noise(const ClusterConfig& cfg, const Scenario& scenario,
                                      Rng& rng) {
    ReceptionNoise out;
    for (int mt = 0; mt < cfg.num_bs; ++mt) {
        const int nr = cfg.rx_antennas[static_cast<std::size_t>(mt)];
        out.oci.push_back(sample_oci(nr, scenario.beta, cfg.power, scenario.nakagami_m, rng));
        out.awgn.push_back(sample_awgn(nr, cfg.noise, rng));
    }
    return out;
}

double cross_link_scale(int num_bs, double alpha) {
    if (num_bs <= 1) return 0.0;
    return std::sqrt(alpha / (num_bs - 1));
}

Reception simulate_reception(const ClusterConfig& cfg, double alpha, const ChannelSet& actual,
                             const BeamformerSolution& solution,
                             const std::vector<CVector>& symbols, const ReceptionNoise& noise) {
    cfg.validate();
    const auto b = static_cast<std::size_t>(cfg.num_bs);
    require(actual.size() == b && solution.precoders.size() == b &&
                solution.combiners.size() == b && symbols.size() == b &&
                noise.oci.size() == b && noise.awgn.size() == b,
            "simulate_reception: per-BS inputs must match the cluster size");

    std::vector<CVector> tx(b);
    for (std::size_t l = 0; l < b; ++l) {
        const int li = static_cast<int>(l);
        require(solution.precoders[l].rows() == cfg.tx_antennas[l],
                "simulate_reception: precoder rows must equal nT");
        require(symbols[l].size() == solution.precoders[l].cols(),
                "simulate_reception: symbol count must equal the stream count");
        tx[l] = solution.scaled_precoder(li) * symbols[l];
    }

    const double scale = cross_link_scale(cfg.num_bs, alpha);
    Reception out;
    for (std::size_t mt = 0; mt < b; ++mt) {
        const auto nr = static_cast<Eigen::Index>(cfg.rx_antennas[mt]);
        require(noise.oci[mt].size() == nr && noise.awgn[mt].size() == nr &&
                    solution.combiners[mt].rows() == nr,
                "simulate_reception: receive-side dimensions must equal nR");
        CVector y = actual[mt][mt] * tx[mt];
        for (std::size_t l = 0; l < b; ++l)
            if (l != mt) y += scale * (actual[mt][l] * tx[l]);
        y += noise.oci[mt] + noise.awgn[mt];
        out.estimates.push_back(solution.combiners[mt].adjoint() * y);
        out.received.push_back(std::move(y));
    }
    return out;
}

} // namespace cbsim
