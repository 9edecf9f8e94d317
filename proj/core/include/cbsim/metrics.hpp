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

#ifndef CBSIM_METRICS_HPP
#define CBSIM_METRICS_HPP

#include "cbsim/model.hpp"
#include "cbsim/schemes.hpp"

#include <optional>
#include <vector>

namespace cbsim {

// Closed-form cluster sum rates (bits/s/Hz) for the two-cell example.
struct RateBounds {
    double full_reuse = 0;
    double orthogonal = 0;
    double ia = 0;
    double jt = 0;
};

// Only num_bs == 2 is supported; other values throw ValidationError.
RateBounds theory_bounds(double snr, double alpha, double beta, int num_bs = 2);

struct SumRateSample {
    double value = 0;
    std::vector<double> per_mt;
};

// sum_b log2 det(I + H_bb S_b H_bb^H Q_b^-1), Q_b holding the scaled ICI plus
// the white OCI-plus-noise floor. Receive combiners do not enter.
SumRateSample cluster_sum_rate(const ClusterConfig& cfg, double alpha, double beta,
                               const ChannelSet& actual, const BeamformerSolution& solution);

// SINR of stream `stream` at MT `mt` after combining. The OCI-plus-noise
// term is its expectation unless a realized ReceptionNoise is supplied.
double stream_sinr(const ClusterConfig& cfg, double alpha, double beta, const ChannelSet& actual,
                   const BeamformerSolution& solution, int mt, int stream,
                   const ReceptionNoise* realized = nullptr);

// OCI power relative to the estimated intended signal power.
double relative_oci_power(double beta, int n_tx, int n_rx, PilotCount pilots, double snr);

} // namespace cbsim

#endif
