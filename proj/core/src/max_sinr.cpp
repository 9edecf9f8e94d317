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

#include "cbsim/linalg.hpp"
#include "cbsim/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cbsim {

namespace {

// p |w^H h|^2 / (w^H B w)
double rayleigh_sinr(double power, const CVector& w, const CVector& h, const CMatrix& b) {
    const double den = (w.adjoint() * b * w)(0, 0).real();
    if (den <= 0.0) return 0.0;
    return power * std::norm(w.dot(h)) / den;
}

// Unit vector maximizing p |w^H h|^2 / (w^H B w): w ~ B^-1 h.
CVector best_filter(const CMatrix& b, const CVector& h, bool& fallback) {
    fallback = false;
    if (h.norm() == 0.0) {
        fallback = true;
        CVector e = CVector::Zero(h.size());
        e(0) = 1.0;
        return e;
    }
    CVector w = linalg::solve_hpd(b, h);
    return w / w.norm();
}

struct GainTracker {
    double worst = std::numeric_limits<double>::infinity();
    void record(double before, double after) {
        const double scale = std::max(before, std::numeric_limits<double>::min());
        worst = std::min(worst, (after - before) / scale);
    }
};

} // namespace

// Per-stream SINR maximization on the forward network, then the same update
// on the reciprocal network for the precoders. Powers stay at P / d_b.
BeamformerSolution max_sinr(const DesignProblem& problem, const std::vector<int>& streams,
                            const DesignOptions& options) {
    problem.validate();
    detail::validate_stream_counts(problem, streams);
    const auto nb = static_cast<std::size_t>(problem.num_bs());

    BeamformerSolution s;
    for (std::size_t l = 0; l < nb; ++l) {
        const int d = streams[l];
        s.precoders.push_back(linalg::dominant_right_singular_vectors(problem.channels[l][l], d));
        s.powers.push_back(RVector::Constant(d, problem.power / d));
    }
    std::vector<CMatrix> u = mmse_combiners(problem, s.precoders, s.powers);
    for (auto& um : u)
        for (Eigen::Index k = 0; k < um.cols(); ++k) um.col(k).normalize();

    GainTracker gains;
    double previous = -1.0;
    for (int it = 0; it < options.max_iters; ++it) {
        // forward: combiners
        for (std::size_t m = 0; m < nb; ++m) {
            const int nr = problem.n_rx(static_cast<int>(m));
            CMatrix r = problem.noise[m] * CMatrix::Identity(nr, nr);
            for (std::size_t l = 0; l < nb; ++l) {
                const CMatrix gv = problem.channels[m][l] * s.precoders[l];
                for (Eigen::Index k = 0; k < gv.cols(); ++k)
                    r += s.powers[l](k) * gv.col(k) * gv.col(k).adjoint();
            }
            for (int k = 0; k < streams[m]; ++k) {
                const CVector h = problem.channels[m][m] * s.precoders[m].col(k);
                const double p = s.powers[m](k);
                const CMatrix bk = r - p * h * h.adjoint();
                const double before = rayleigh_sinr(p, u[m].col(k), h, bk);
                bool fallback = false;
                u[m].col(k) = best_filter(bk, h, fallback);
                if (fallback) ++s.trace.fallbacks;
                gains.record(before, rayleigh_sinr(p, u[m].col(k), h, bk));
            }
        }
        // reciprocal: precoders
        for (std::size_t l = 0; l < nb; ++l) {
            const int nt = problem.n_tx(static_cast<int>(l));
            CMatrix r = problem.noise[l] * CMatrix::Identity(nt, nt);
            for (std::size_t m = 0; m < nb; ++m) {
                const CMatrix gu = problem.channels[m][l].adjoint() * u[m];
                for (Eigen::Index k = 0; k < gu.cols(); ++k)
                    r += s.powers[m](k) * gu.col(k) * gu.col(k).adjoint();
            }
            for (int k = 0; k < streams[l]; ++k) {
                const CVector h = problem.channels[l][l].adjoint() * u[l].col(k);
                const double p = s.powers[l](k);
                const CMatrix bk = r - p * h * h.adjoint();
                const double before = rayleigh_sinr(p, s.precoders[l].col(k), h, bk);
                bool fallback = false;
                s.precoders[l].col(k) = best_filter(bk, h, fallback);
                if (fallback) ++s.trace.fallbacks;
                gains.record(before, rayleigh_sinr(p, s.precoders[l].col(k), h, bk));
            }
        }

        // objective: worst stream SINR with optimal combiners for the new precoders
        const std::vector<CMatrix> probe = mmse_combiners(problem, s.precoders, s.powers);
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < nb; ++m)
            for (int k = 0; k < streams[m]; ++k)
                worst = std::min(worst, design_stream_sinr(problem, s.precoders, s.powers, probe,
                                                           static_cast<int>(m), k));
        s.trace.objective.push_back(worst);
        s.trace.iterations = it + 1;
        if (previous >= 0.0 && std::abs(worst - previous) <= options.tol * std::abs(previous)) {
            s.trace.converged = true;
            break;
        }
        previous = worst;
    }
    s.trace.worst_update_gain = std::isfinite(gains.worst) ? gains.worst : 0.0;

    s.combiners = mmse_combiners(problem, s.precoders, s.powers);
    check_solution(s, problem);
    return s;
}

} // namespace cbsim
