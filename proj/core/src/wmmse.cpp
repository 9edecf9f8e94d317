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
#include <numeric>

namespace cbsim {

namespace detail {

void wmmse_receive_update(const DesignProblem& problem, const std::vector<CMatrix>& transmit,
                          std::vector<CMatrix>& combiners, std::vector<CMatrix>& weights) {
    const auto nb = static_cast<std::size_t>(problem.num_bs());
    combiners.resize(nb);
    weights.resize(nb);
    for (std::size_t m = 0; m < nb; ++m) {
        const int nr = problem.n_rx(static_cast<int>(m));
        CMatrix r = problem.noise[m] * CMatrix::Identity(nr, nr);
        for (std::size_t l = 0; l < nb; ++l) {
            const CMatrix gt = problem.channels[m][l] * transmit[l];
            r += gt * gt.adjoint();
        }
        const CMatrix own = problem.channels[m][m] * transmit[m];
        combiners[m] = linalg::solve_hpd(r, own);
        const auto d = own.cols();
        const CMatrix mse = linalg::hermitian_part(CMatrix::Identity(d, d) - combiners[m].adjoint() * own);
        weights[m] = linalg::solve_hpd(mse, CMatrix::Identity(d, d));
    }
}

CMatrix wmmse_transmit_update(const DesignProblem& problem, const std::vector<CMatrix>& combiners,
                              const std::vector<CMatrix>& weights, int bs) {
    const auto l = static_cast<std::size_t>(bs);
    const int nt = problem.n_tx(bs);
    CMatrix a = CMatrix::Zero(nt, nt);
    for (std::size_t m = 0; m < combiners.size(); ++m) {
        const CMatrix gu = problem.channels[m][l].adjoint() * combiners[m];
        a += gu * weights[m] * gu.adjoint();
    }
    const CMatrix rhs = problem.channels[l][l].adjoint() * combiners[l] * weights[l];

    const linalg::HermitianEigen e = linalg::hermitian_eigen(a);
    const double top = e.values(0);
    if (!(top > 0.0)) throw NumericalFailure("WMMSE: transmit normal matrix is zero");
    const CMatrix proj = e.vectors.adjoint() * rhs;
    std::vector<Eigen::Index> active;
    std::vector<double> weight;
    for (Eigen::Index i = 0; i < nt; ++i) {
        // numerically null directions carry no right-hand side energy
        if (e.values(i) > 1e-12 * top) {
            active.push_back(i);
            weight.push_back(proj.row(i).squaredNorm());
        }
    }
    const auto power_at = [&](double mu) {
        double p = 0.0;
        for (std::size_t j = 0; j < active.size(); ++j) {
            const double den = e.values(active[j]) + mu;
            p += weight[j] / (den * den);
        }
        return p;
    };

    double mu = 0.0;
    if (power_at(0.0) > problem.power) {
        double lo = 0.0;
        double hi = top;
        int doublings = 0;
        while (power_at(hi) > problem.power) {
            lo = hi;
            hi *= 2.0;
            if (++doublings > 128)
                throw NumericalFailure("WMMSE: power multiplier bracket not found");
        }
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (power_at(mid) > problem.power)
                lo = mid;
            else
                hi = mid;
        }
        mu = hi;
    }

    CMatrix out = CMatrix::Zero(nt, rhs.cols());
    for (Eigen::Index i : active)
        out += e.vectors.col(i) * (proj.row(i) / (e.values(i) + mu));
    return out;
}

} // namespace detail

namespace {

std::vector<CMatrix> covariances(const std::vector<CMatrix>& transmit) {
    std::vector<CMatrix> s;
    for (const auto& t : transmit) s.push_back(t * t.adjoint());
    return s;
}

std::vector<CMatrix> eigen_start(const DesignProblem& problem, const std::vector<int>& streams) {
    std::vector<CMatrix> t;
    for (int b = 0; b < problem.num_bs(); ++b) {
        const auto i = static_cast<std::size_t>(b);
        const int d = streams[i];
        t.push_back(linalg::dominant_right_singular_vectors(problem.channels[i][i], d) *
                    std::sqrt(problem.power / d));
    }
    return t;
}

std::vector<int> full_streams(const DesignProblem& problem) {
    std::vector<int> d;
    for (int b = 0; b < problem.num_bs(); ++b) d.push_back(problem.max_streams(b));
    return d;
}

bool converged(double previous, double current, double tol) {
    return std::abs(current - previous) <= tol * std::abs(previous);
}

// Orthonormal streams of each transmit covariance; eigenmodes below the
// pruning floor are dropped, keeping at least the strongest one.
BeamformerSolution finish_from_covariances(const DesignProblem& problem,
                                           const std::vector<CMatrix>& transmit, double floor) {
    BeamformerSolution s;
    for (std::size_t b = 0; b < transmit.size(); ++b) {
        const linalg::HermitianEigen e = linalg::hermitian_eigen(transmit[b] * transmit[b].adjoint());
        const int limit = problem.max_streams(static_cast<int>(b));
        int keep = 0;
        while (keep < limit && e.values(keep) >= floor) ++keep;
        keep = std::max(keep, 1);
        s.precoders.push_back(e.vectors.leftCols(keep));
        s.powers.push_back(e.values.head(keep).cwiseMax(0.0));
    }
    s.combiners = mmse_combiners(problem, s.precoders, s.powers);
    return s;
}

struct Pass {
    std::vector<CMatrix> transmit;
    ConvergenceTrace trace;
};

// Shared WMMSE-style loop. mix(b, candidate) post-processes the weighted-MMSE
// transmit update for BS b before it is adopted.
template <typename Mix>
Pass run_pass(const DesignProblem& problem, std::vector<CMatrix> transmit,
              const DesignOptions& options, Mix&& mix) {
    Pass out;
    std::vector<CMatrix> u;
    std::vector<CMatrix> w;
    double previous = detail::sum_rate_from_covariances(problem, covariances(transmit));
    out.trace.objective.push_back(previous);
    for (int it = 0; it < options.max_iters; ++it) {
        detail::wmmse_receive_update(problem, transmit, u, w);
        for (int b = 0; b < problem.num_bs(); ++b) {
            const auto i = static_cast<std::size_t>(b);
            transmit[i] = mix(b, detail::wmmse_transmit_update(problem, u, w, b));
        }
        const double rate = detail::sum_rate_from_covariances(problem, covariances(transmit));
        out.trace.objective.push_back(rate);
        out.trace.iterations = it + 1;
        if (converged(previous, rate, options.tol)) {
            out.trace.converged = true;
            break;
        }
        previous = rate;
    }
    out.transmit = std::move(transmit);
    return out;
}

} // namespace

// Weighted sum-MSE minimization (equivalently, local sum-rate maximization)
// with a per-BS power constraint enforced through a bisected multiplier.
BeamformerSolution wmmse(const DesignProblem& problem, const DesignOptions& options) {
    problem.validate();
    Pass pass = run_pass(problem, eigen_start(problem, full_streams(problem)), options,
                         [](int, CMatrix t) { return t; });
    BeamformerSolution s =
        finish_from_covariances(problem, pass.transmit, options.prune_fraction * problem.power);
    s.trace = std::move(pass.trace);
    check_solution(s, problem);
    return s;
}

namespace {

// Rotates `ego` so that ego^H target is real nonnegative.
CVector align_phase(const CVector& ego, const CVector& target) {
    const cplx c = ego.dot(target);
    if (std::abs(c) == 0.0) return ego;
    return ego * (c / std::abs(c));
}

} // namespace

// Two-part precoder: each column mixes the weighted-MMSE direction with the
// corresponding own-link eigenmode; stream powers follow the MMSE part.
// After convergence, streams whose design SINR is below the threshold are
// dropped and the design is run once more with the reduced stream counts.
BeamformerSolution reconfigurable(const DesignProblem& problem, const DesignOptions& options) {
    problem.validate();
    const double lambda = options.mix_weight;
    if (lambda < 0.0 || lambda > 1.0) throw ValidationError("lambda: must lie in [0, 1]");
    const int nb = problem.num_bs();

    std::vector<CMatrix> ego;
    for (int b = 0; b < nb; ++b) {
        const auto i = static_cast<std::size_t>(b);
        ego.push_back(linalg::dominant_right_singular_vectors(problem.channels[i][i],
                                                              problem.max_streams(b)));
    }

    std::vector<std::vector<int>> column_map(static_cast<std::size_t>(nb));
    const auto mix = [&](int b, CMatrix t) {
        const auto i = static_cast<std::size_t>(b);
        for (Eigen::Index k = 0; k < t.cols(); ++k) {
            const double n = t.col(k).norm();
            const CVector own = ego[i].col(column_map[i][static_cast<std::size_t>(k)]);
            CVector dir = n > 0.0 ? CVector(t.col(k) / n) : own;
            CVector mixed = lambda * dir + (1.0 - lambda) * align_phase(own, dir);
            const double mn = mixed.norm();
            if (mn > 0.0) dir = mixed / mn;
            t.col(k) = dir * n;
        }
        return t;
    };

    for (std::size_t b = 0; b < column_map.size(); ++b) {
        column_map[b].resize(static_cast<std::size_t>(ego[b].cols()));
        std::iota(column_map[b].begin(), column_map[b].end(), 0);
    }
    Pass pass = run_pass(problem, eigen_start(problem, full_streams(problem)), options, mix);
    int longest = pass.trace.iterations;

    // stream adaptation
    const double threshold = std::pow(10.0, options.min_stream_sinr_db / 10.0);
    std::vector<CMatrix> unit(static_cast<std::size_t>(nb));
    std::vector<RVector> powers(static_cast<std::size_t>(nb));
    for (std::size_t b = 0; b < unit.size(); ++b) detail::split_columns(pass.transmit[b], unit[b], powers[b]);
    const std::vector<CMatrix> u = mmse_combiners(problem, unit, powers);

    bool dropped = false;
    std::vector<CMatrix> next(static_cast<std::size_t>(nb));
    for (int b = 0; b < nb; ++b) {
        const auto i = static_cast<std::size_t>(b);
        std::vector<Eigen::Index> keep;
        Eigen::Index best = 0;
        double best_sinr = -1.0;
        for (Eigen::Index k = 0; k < unit[i].cols(); ++k) {
            const double sinr = powers[i](k) > 0.0
                                    ? design_stream_sinr(problem, unit, powers, u, b, static_cast<int>(k))
                                    : 0.0;
            if (sinr >= threshold) keep.push_back(k);
            if (sinr > best_sinr) {
                best_sinr = sinr;
                best = k;
            }
        }
        if (keep.empty()) keep.push_back(best);
        if (static_cast<Eigen::Index>(keep.size()) < unit[i].cols()) dropped = true;

        double kept_power = 0.0;
        for (auto k : keep) kept_power += powers[i](k);
        CMatrix t(unit[i].rows(), static_cast<Eigen::Index>(keep.size()));
        std::vector<int> cm;
        for (std::size_t j = 0; j < keep.size(); ++j) {
            const auto k = keep[j];
            // surviving streams share the full budget in their current proportions
            const double p = kept_power > 0.0 ? powers[i](k) * problem.power / kept_power
                                              : problem.power / static_cast<double>(keep.size());
            t.col(static_cast<Eigen::Index>(j)) = unit[i].col(k) * std::sqrt(p);
            cm.push_back(column_map[i][static_cast<std::size_t>(k)]);
        }
        next[i] = std::move(t);
        column_map[i] = std::move(cm);
    }

    std::vector<double> objective = pass.trace.objective;
    if (dropped) {
        pass = run_pass(problem, std::move(next), options, mix);
        longest = std::max(longest, pass.trace.iterations);
        objective.insert(objective.end(), pass.trace.objective.begin(), pass.trace.objective.end());
    }

    BeamformerSolution s;
    for (std::size_t b = 0; b < pass.transmit.size(); ++b) {
        CMatrix v;
        RVector p;
        detail::split_columns(pass.transmit[b], v, p);
        s.precoders.push_back(std::move(v));
        s.powers.push_back(std::move(p));
    }
    s.combiners = mmse_combiners(problem, s.precoders, s.powers);
    s.trace.objective = std::move(objective);
    s.trace.iterations = longest;
    s.trace.converged = pass.trace.converged;
    check_solution(s, problem);
    return s;
}

} // namespace cbsim
