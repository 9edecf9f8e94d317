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

#ifndef CBSIM_SCHEMES_HPP
#define CBSIM_SCHEMES_HPP

#include "cbsim/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cbsim {

// Channels and noise floor a scheme designs against. Built from estimated
// channels only; the actual channels are never visible to a design.
struct DesignProblem {
    // G[b][l]: own links unscaled, cross links scaled by sqrt(alpha / (B - 1)).
    ChannelSet channels;
    double power = 1.0;
    std::vector<double> noise; // sigma^2 per MT

    int num_bs() const { return static_cast<int>(channels.size()); }
    int n_tx(int bs) const { return static_cast<int>(channels[0][bs].cols()); }
    int n_rx(int mt) const { return static_cast<int>(channels[mt][0].rows()); }
    int max_streams(int bs) const { return std::min(n_tx(bs), n_rx(bs)); }

    void validate() const;
};

// oci_aware raises the noise floor to N0 + beta P / nR.
DesignProblem make_design_problem(const ClusterConfig& cfg, double alpha, double beta,
                                  const ChannelSet& estimated, bool oci_aware);

struct ConvergenceTrace {
    // Per-iteration objective; its meaning depends on the scheme (leakage for
    // IA, min stream SINR for max-SINR, design sum rate for WMMSE-type).
    std::vector<double> objective;
    int iterations = 0;
    bool converged = false;
    // max-SINR: zero effective channel columns replaced by a unit vector.
    int fallbacks = 0;
    // max-SINR: smallest (after - before) SINR change over all column
    // updates, relative to the before value. Negative means a regression.
    double worst_update_gain = 0.0;
};

struct BeamformerSolution {
    std::vector<CMatrix> precoders; // V_b, unit-norm columns
    std::vector<RVector> powers;    // per-stream powers
    std::vector<CMatrix> combiners; // U_b used at reception
    // IA only: the interference-nulling receive subspaces.
    std::optional<std::vector<CMatrix>> nulling_combiners;
    // Orthogonal time-frequency sharing: no ICI, prelog 1/B.
    bool orthogonal = false;
    ConvergenceTrace trace;

    int num_bs() const { return static_cast<int>(precoders.size()); }
    int streams(int bs) const { return static_cast<int>(precoders[bs].cols()); }
    // S_b = V_b P_b V_b^H
    CMatrix covariance(int bs) const;
    // V_b P_b^{1/2}
    CMatrix scaled_precoder(int bs) const;
};

// Throws std::logic_error when unit-norm, power budget, stream-count or
// nonzero-combiner invariants are violated.
void check_solution(const BeamformerSolution& solution, const DesignProblem& problem);

// Per-stream MMSE receive filters against the total received covariance.
std::vector<CMatrix> mmse_combiners(const DesignProblem& problem,
                                    const std::vector<CMatrix>& precoders,
                                    const std::vector<RVector>& powers);

// sum_b sum_{l != b} || C_b^H G[b][l] V_l P_l^{1/2} ||_F^2, where C_b are the
// nulling combiners when present and the reception combiners otherwise.
double interference_leakage(const BeamformerSolution& solution, const DesignProblem& problem);

// Cluster sum rate evaluated on the design channels and design noise floor.
double design_sum_rate(const DesignProblem& problem, const std::vector<CMatrix>& precoders,
                       const std::vector<RVector>& powers);

// Per-stream SINR on the design problem using the given combiners.
double design_stream_sinr(const DesignProblem& problem, const std::vector<CMatrix>& precoders,
                          const std::vector<RVector>& powers, const std::vector<CMatrix>& combiners,
                          int mt, int stream);

// Number of streams used when DesignOptions::preset_streams is 0.
int default_preset_streams(const DesignProblem& problem, int bs);
std::vector<int> preset_streams(const DesignProblem& problem, const DesignOptions& options);

BeamformerSolution ia_min_leakage(const DesignProblem& problem, const std::vector<int>& streams,
                                  const DesignOptions& options = {});

BeamformerSolution max_sinr(const DesignProblem& problem, const std::vector<int>& streams,
                            const DesignOptions& options = {});

BeamformerSolution wmmse(const DesignProblem& problem, const DesignOptions& options = {});

BeamformerSolution reconfigurable(const DesignProblem& problem, const DesignOptions& options = {});

BeamformerSolution full_reuse_baseline(const DesignProblem& problem);

BeamformerSolution orthogonal_baseline(const DesignProblem& problem);

enum class Scheme { ia, max_sinr, wmmse, reconfigurable, full_reuse, orthogonal };

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);
// Whether the design noise floor includes the expected OCI power.
bool is_oci_aware(Scheme scheme);

BeamformerSolution design(Scheme scheme, const DesignProblem& problem,
                          const DesignOptions& options = {});

namespace detail {

// Throws ValidationError unless 1 <= streams[b] <= min(nT, nR) for every BS.
void validate_stream_counts(const DesignProblem& problem, const std::vector<int>& streams);

// Design sum rate from transmit covariances S_b.
double sum_rate_from_covariances(const DesignProblem& problem,
                                 const std::vector<CMatrix>& covariances);

// One WMMSE transmit update for BS `bs` given combiners and MSE weights:
// V = (A + mu I)^-1 G^H U W with the smallest mu >= 0 meeting the budget.
CMatrix wmmse_transmit_update(const DesignProblem& problem, const std::vector<CMatrix>& combiners,
                              const std::vector<CMatrix>& weights, int bs);

// Unnormalized MMSE receive filters and MSE weights E^-1 for given full
// (power-scaled) precoders.
void wmmse_receive_update(const DesignProblem& problem, const std::vector<CMatrix>& transmit,
                          std::vector<CMatrix>& combiners, std::vector<CMatrix>& weights);

// Splits a full precoder into unit-norm columns and their powers.
void split_columns(const CMatrix& full, CMatrix& unit, RVector& powers);

} // namespace detail

} // namespace cbsim

#endif
