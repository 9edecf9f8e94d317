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

#include "cbsim/schemes.hpp"

#include "cbsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cbsim {

void DesignProblem::validate() const {
    const auto b = channels.size();
    if (b == 0) throw ValidationError("design problem: empty cluster");
    if (noise.size() != b) throw ValidationError("design problem: one noise floor per MT required");
    if (!(power > 0)) throw ValidationError("design problem: power must be positive");
    for (std::size_t mt = 0; mt < b; ++mt) {
        if (channels[mt].size() != b)
            throw ValidationError("design problem: channel set must be B x B");
        if (!(noise[mt] > 0)) throw ValidationError("design problem: noise floor must be positive");
        for (std::size_t bs = 0; bs < b; ++bs) {
            if (channels[mt][bs].rows() != channels[mt][0].rows() ||
                channels[mt][bs].cols() != channels[0][bs].cols() ||
                channels[mt][bs].size() == 0)
                throw ValidationError("design problem: inconsistent channel dimensions");
        }
    }
}

DesignProblem make_design_problem(const ClusterConfig& cfg, double alpha, double beta,
                                  const ChannelSet& estimated, bool oci_aware) {
    cfg.validate();
    const auto b = static_cast<std::size_t>(cfg.num_bs);
    if (estimated.size() != b) throw ValidationError("design problem: channel set size != B");
    DesignProblem p;
    p.power = cfg.power;
    p.channels = estimated;
    const double scale = cross_link_scale(cfg.num_bs, alpha);
    for (std::size_t mt = 0; mt < b; ++mt) {
        for (std::size_t bs = 0; bs < b; ++bs)
            if (bs != mt) p.channels[mt][bs] *= scale;
        double sigma2 = cfg.noise;
        if (oci_aware) sigma2 += beta * cfg.power / cfg.rx_antennas[mt];
        p.noise.push_back(sigma2);
    }
    p.validate();
    return p;
}

CMatrix BeamformerSolution::covariance(int bs) const {
    const CMatrix vp = scaled_precoder(bs);
    return vp * vp.adjoint();
}

CMatrix BeamformerSolution::scaled_precoder(int bs) const {
    const auto i = static_cast<std::size_t>(bs);
    CMatrix vp = precoders[i];
    for (Eigen::Index k = 0; k < vp.cols(); ++k)
        vp.col(k) *= std::sqrt(std::max(powers[i](k), 0.0));
    return vp;
}

void check_solution(const BeamformerSolution& s, const DesignProblem& problem) {
    const int b = problem.num_bs();
    if (s.num_bs() != b || static_cast<int>(s.powers.size()) != b ||
        static_cast<int>(s.combiners.size()) != b)
        throw std::logic_error("solution: per-BS arrays must match the cluster size");
    for (int i = 0; i < b; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const CMatrix& v = s.precoders[idx];
        const int d = s.streams(i);
        if (d < 1 || d > problem.max_streams(i))
            throw std::logic_error("solution: stream count out of [1, min(nT, nR)]");
        if (v.rows() != problem.n_tx(i) || s.powers[idx].size() != d ||
            s.combiners[idx].rows() != problem.n_rx(i) || s.combiners[idx].cols() != d)
            throw std::logic_error("solution: inconsistent precoder/combiner dimensions");
        for (int k = 0; k < d; ++k) {
            if (std::abs(v.col(k).norm() - 1.0) > 1e-9)
                throw std::logic_error("solution: precoder column is not unit norm");
            if (s.combiners[idx].col(k).norm() == 0.0)
                throw std::logic_error("solution: zero combiner column");
        }
        if ((s.powers[idx].array() < 0.0).any())
            throw std::logic_error("solution: negative stream power");
        if (s.powers[idx].sum() > problem.power + 1e-9)
            throw std::logic_error("solution: power budget exceeded");
    }
}

namespace {

// Total received covariance at MT mt: all streams from all BSs plus noise.
CMatrix received_covariance(const DesignProblem& problem, const std::vector<CMatrix>& covariances,
                            int mt) {
    const auto m = static_cast<std::size_t>(mt);
    CMatrix r = problem.noise[m] * CMatrix::Identity(problem.n_rx(mt), problem.n_rx(mt));
    for (std::size_t l = 0; l < covariances.size(); ++l)
        r += problem.channels[m][l] * covariances[l] * problem.channels[m][l].adjoint();
    return r;
}

std::vector<CMatrix> covariances_of(const std::vector<CMatrix>& precoders,
                                    const std::vector<RVector>& powers) {
    std::vector<CMatrix> s;
    for (std::size_t i = 0; i < precoders.size(); ++i) {
        CMatrix vp = precoders[i];
        for (Eigen::Index k = 0; k < vp.cols(); ++k) vp.col(k) *= std::sqrt(powers[i](k));
        s.push_back(vp * vp.adjoint());
    }
    return s;
}

} // namespace

std::vector<CMatrix> mmse_combiners(const DesignProblem& problem,
                                    const std::vector<CMatrix>& precoders,
                                    const std::vector<RVector>& powers) {
    const auto cov = covariances_of(precoders, powers);
    std::vector<CMatrix> u;
    for (int mt = 0; mt < problem.num_bs(); ++mt) {
        const auto m = static_cast<std::size_t>(mt);
        const CMatrix r = received_covariance(problem, cov, mt);
        CMatrix eff = problem.channels[m][m] * precoders[m];
        for (Eigen::Index k = 0; k < eff.cols(); ++k)
            if (powers[m](k) > 0) eff.col(k) *= std::sqrt(powers[m](k));
        CMatrix um = linalg::solve_hpd(r, eff);
        // a stream with no effective channel still needs a nonzero filter
        for (Eigen::Index k = 0; k < um.cols(); ++k)
            if (um.col(k).norm() == 0.0) um(0, k) = 1.0;
        u.push_back(std::move(um));
    }
    return u;
}

double interference_leakage(const BeamformerSolution& solution, const DesignProblem& problem) {
    const auto& c = solution.nulling_combiners ? *solution.nulling_combiners : solution.combiners;
    double total = 0.0;
    for (int mt = 0; mt < problem.num_bs(); ++mt) {
        for (int l = 0; l < problem.num_bs(); ++l) {
            if (l == mt) continue;
            const auto m = static_cast<std::size_t>(mt);
            total += (c[m].adjoint() * problem.channels[m][static_cast<std::size_t>(l)] *
                      solution.scaled_precoder(l))
                         .squaredNorm();
        }
    }
    return total;
}

namespace detail {

double sum_rate_from_covariances(const DesignProblem& problem,
                                 const std::vector<CMatrix>& covariances) {
    double rate = 0.0;
    for (int mt = 0; mt < problem.num_bs(); ++mt) {
        const auto m = static_cast<std::size_t>(mt);
        const int nr = problem.n_rx(mt);
        // log det(I + H S H^H Q^-1) = log det(Q + H S H^H) - log det(Q)
        CMatrix q = problem.noise[m] * CMatrix::Identity(nr, nr);
        for (std::size_t l = 0; l < covariances.size(); ++l)
            if (l != m) q += problem.channels[m][l] * covariances[l] * problem.channels[m][l].adjoint();
        const CMatrix total = q + problem.channels[m][m] * covariances[m] * problem.channels[m][m].adjoint();
        rate += linalg::log2_det_hpd(total) - linalg::log2_det_hpd(q);
    }
    return rate;
}

void split_columns(const CMatrix& full, CMatrix& unit, RVector& powers) {
    unit.resize(full.rows(), full.cols());
    powers.resize(full.cols());
    for (Eigen::Index k = 0; k < full.cols(); ++k) {
        const double n = full.col(k).norm();
        powers(k) = n * n;
        if (n > 0) {
            unit.col(k) = full.col(k) / n;
        } else {
            unit.col(k).setZero();
            unit(0, k) = 1.0;
        }
    }
}

} // namespace detail

double design_sum_rate(const DesignProblem& problem, const std::vector<CMatrix>& precoders,
                       const std::vector<RVector>& powers) {
    return detail::sum_rate_from_covariances(problem, covariances_of(precoders, powers));
}

double design_stream_sinr(const DesignProblem& problem, const std::vector<CMatrix>& precoders,
                          const std::vector<RVector>& powers, const std::vector<CMatrix>& combiners,
                          int mt, int stream) {
    const auto m = static_cast<std::size_t>(mt);
    const CVector u = combiners[m].col(stream);
    double signal = 0.0;
    double interference = problem.noise[m] * u.squaredNorm();
    for (std::size_t l = 0; l < precoders.size(); ++l) {
        const Eigen::RowVectorXcd gains = u.adjoint() * problem.channels[m][l] * precoders[l];
        for (Eigen::Index k = 0; k < gains.size(); ++k) {
            const double p = powers[l](k) * std::norm(gains(k));
            if (l == m && k == stream)
                signal = p;
            else
                interference += p;
        }
    }
    return signal / interference;
}

int default_preset_streams(const DesignProblem& problem, int bs) {
    return std::max(1, problem.max_streams(bs) / 2);
}

std::vector<int> preset_streams(const DesignProblem& problem, const DesignOptions& options) {
    std::vector<int> d;
    for (int b = 0; b < problem.num_bs(); ++b) {
        const int want = options.preset_streams > 0 ? options.preset_streams
                                                    : default_preset_streams(problem, b);
        d.push_back(std::min(want, problem.max_streams(b)));
    }
    return d;
}

namespace {

BeamformerSolution eigen_beamforming(const DesignProblem& problem) {
    problem.validate();
    BeamformerSolution s;
    for (int b = 0; b < problem.num_bs(); ++b) {
        const auto i = static_cast<std::size_t>(b);
        const int d = problem.max_streams(b);
        s.precoders.push_back(linalg::dominant_right_singular_vectors(problem.channels[i][i], d));
        s.powers.push_back(RVector::Constant(d, problem.power / d));
    }
    s.combiners = mmse_combiners(problem, s.precoders, s.powers);
    s.trace.converged = true;
    return s;
}

} // namespace

BeamformerSolution full_reuse_baseline(const DesignProblem& problem) {
    BeamformerSolution s = eigen_beamforming(problem);
    check_solution(s, problem);
    return s;
}

BeamformerSolution orthogonal_baseline(const DesignProblem& problem) {
    // Each BS is alone on its share of the resources, so the receiver sees
    // no intra-cluster interference.
    DesignProblem isolated = problem;
    for (int mt = 0; mt < isolated.num_bs(); ++mt)
        for (int l = 0; l < isolated.num_bs(); ++l)
            if (l != mt) isolated.channels[static_cast<std::size_t>(mt)][static_cast<std::size_t>(l)].setZero();
    BeamformerSolution s = eigen_beamforming(isolated);
    s.orthogonal = true;
    check_solution(s, problem);
    return s;
}

std::string_view scheme_name(Scheme scheme) {
    switch (scheme) {
    case Scheme::ia: return "ia";
    case Scheme::max_sinr: return "max_sinr";
    case Scheme::wmmse: return "wmmse";
    case Scheme::reconfigurable: return "reconfigurable";
    case Scheme::full_reuse: return "full_reuse";
    case Scheme::orthogonal: return "orthogonal";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    for (Scheme s : {Scheme::ia, Scheme::max_sinr, Scheme::wmmse, Scheme::reconfigurable,
                     Scheme::full_reuse, Scheme::orthogonal})
        if (scheme_name(s) == name) return s;
    return std::nullopt;
}

bool is_oci_aware(Scheme scheme) {
    return scheme == Scheme::max_sinr || scheme == Scheme::wmmse || scheme == Scheme::reconfigurable;
}

BeamformerSolution design(Scheme scheme, const DesignProblem& problem,
                          const DesignOptions& options) {
    switch (scheme) {
    case Scheme::ia: return ia_min_leakage(problem, preset_streams(problem, options), options);
    case Scheme::max_sinr: return max_sinr(problem, preset_streams(problem, options), options);
    case Scheme::wmmse: return wmmse(problem, options);
    case Scheme::reconfigurable: return reconfigurable(problem, options);
    case Scheme::full_reuse: return full_reuse_baseline(problem);
    case Scheme::orthogonal: return orthogonal_baseline(problem);
    }
    throw std::logic_error("unknown scheme");
}

} // namespace cbsim
