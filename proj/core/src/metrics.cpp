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

#include "cbsim/metrics.hpp"

#include "cbsim/linalg.hpp"

#include <cmath>

namespace cbsim {

RateBounds theory_bounds(double snr, double alpha, double beta, int num_bs) {
    if (num_bs != 2) throw ValidationError("theory_bounds: only the two-cell cluster is supported");
    if (!(snr >= 0.0)) throw ValidationError("theory_bounds: SNR must be nonnegative");
    if (alpha < 0.0 || alpha > 1.0) throw ValidationError("alpha: must lie in [0, 1]");
    if (beta < 0.0 || beta > 1.0) throw ValidationError("beta: must lie in [0, 1]");
    const double oci_floor = beta * snr + 1.0;
    RateBounds r;
    r.full_reuse = std::log2(1.0 + snr / (alpha * snr + oci_floor));
    r.ia = std::log2(1.0 + snr / oci_floor);
    r.orthogonal = 0.5 * r.ia;
    r.jt = std::log2(1.0 + (1.0 + alpha) * snr / oci_floor);
    // per-MT rates, two MTs in the cluster
    r.full_reuse *= num_bs;
    r.ia *= num_bs;
    r.orthogonal *= num_bs;
    r.jt *= num_bs;
    return r;
}

namespace {

void check_inputs(const ClusterConfig& cfg, const ChannelSet& actual,
                  const BeamformerSolution& solution) {
    cfg.validate();
    const auto b = static_cast<std::size_t>(cfg.num_bs);
    if (actual.size() != b || solution.precoders.size() != b || solution.powers.size() != b)
        throw ValidationError("metrics: inputs do not match the cluster size");
    for (std::size_t m = 0; m < b; ++m) {
        if (actual[m].size() != b) throw ValidationError("metrics: channel set must be B x B");
        for (std::size_t l = 0; l < b; ++l)
            if (actual[m][l].rows() != cfg.rx_antennas[m] || actual[m][l].cols() != cfg.tx_antennas[l])
                throw ValidationError("metrics: channel dimensions do not match nR x nT");
        if (solution.precoders[m].rows() != cfg.tx_antennas[m])
            throw ValidationError("metrics: precoder rows must equal nT");
    }
}

double white_floor(const ClusterConfig& cfg, double beta, std::size_t mt) {
    return beta * cfg.power / cfg.rx_antennas[mt] + cfg.noise;
}

} // namespace

SumRateSample cluster_sum_rate(const ClusterConfig& cfg, double alpha, double beta,
                               const ChannelSet& actual, const BeamformerSolution& solution) {
    check_inputs(cfg, actual, solution);
    const auto b = static_cast<std::size_t>(cfg.num_bs);
    std::vector<CMatrix> s;
    for (int l = 0; l < cfg.num_bs; ++l) s.push_back(solution.covariance(l));

    const double ici_weight = (solution.orthogonal || b == 1) ? 0.0 : alpha / static_cast<double>(b - 1);
    const double prelog = solution.orthogonal ? 1.0 / static_cast<double>(b) : 1.0;

    SumRateSample out;
    for (std::size_t m = 0; m < b; ++m) {
        const int nr = cfg.rx_antennas[m];
        CMatrix q = white_floor(cfg, beta, m) * CMatrix::Identity(nr, nr);
        if (ici_weight > 0.0)
            for (std::size_t l = 0; l < b; ++l)
                if (l != m) q += ici_weight * actual[m][l] * s[l] * actual[m][l].adjoint();
        const CMatrix total = q + actual[m][m] * s[m] * actual[m][m].adjoint();
        // log det(I + H S H^H Q^-1) = log det(Q + H S H^H) - log det(Q)
        const double rate = prelog * (linalg::log2_det_hpd(total) - linalg::log2_det_hpd(q));
        out.per_mt.push_back(std::max(rate, 0.0));
        out.value += out.per_mt.back();
    }
    return out;
}

double stream_sinr(const ClusterConfig& cfg, double alpha, double beta, const ChannelSet& actual,
                   const BeamformerSolution& solution, int mt, int stream,
                   const ReceptionNoise* realized) {
    check_inputs(cfg, actual, solution);
    if (mt < 0 || mt >= cfg.num_bs) throw ValidationError("stream_sinr: MT index out of range");
    const auto m = static_cast<std::size_t>(mt);
    if (stream < 0 || stream >= solution.streams(mt))
        throw ValidationError("stream_sinr: stream index out of range");

    const CVector u = solution.combiners[m].col(stream);
    double signal = 0.0;
    double self = 0.0;
    double ici = 0.0;
    const double ici_weight =
        (solution.orthogonal || cfg.num_bs == 1) ? 0.0 : alpha / (cfg.num_bs - 1);
    for (std::size_t l = 0; l < static_cast<std::size_t>(cfg.num_bs); ++l) {
        const Eigen::RowVectorXcd g = u.adjoint() * actual[m][l] * solution.precoders[l];
        for (Eigen::Index k = 0; k < g.size(); ++k) {
            const double term = solution.powers[l](k) * std::norm(g(k));
            if (l == m) {
                if (k == stream)
                    signal = term;
                else
                    self += term;
            } else {
                ici += ici_weight * term;
            }
        }
    }
    double floor = 0.0;
    if (realized) {
        floor = std::norm(u.dot(realized->oci[m] + realized->awgn[m]));
    } else {
        floor = white_floor(cfg, beta, m) * u.squaredNorm();
    }
    return signal / (self + ici + floor);
}

double relative_oci_power(double beta, int n_tx, int n_rx, PilotCount pilots, double snr) {
    if (beta < 0.0 || beta > 1.0) throw ValidationError("beta: must lie in [0, 1]");
    if (n_rx < 1) throw ValidationError("nR: must be positive");
    const double e = estimation_error_variance(pilots, n_tx, snr);
    return beta / (static_cast<double>(n_tx) * n_rx * e + 1.0);
}

} // namespace cbsim
