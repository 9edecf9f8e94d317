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

namespace cbsim {

namespace {

void validate_streams(const DesignProblem& problem, const std::vector<int>& streams) {
    if (static_cast<int>(streams.size()) != problem.num_bs())
        throw ValidationError("streams: one count per BS required");
    for (int b = 0; b < problem.num_bs(); ++b) {
        const int d = streams[static_cast<std::size_t>(b)];
        if (d < 1 || d > problem.max_streams(b))
            throw ValidationError("streams: d_b must lie in [1, min(nT, nR)]");
    }
}

bool has_cross_links(const DesignProblem& problem) {
    for (int mt = 0; mt < problem.num_bs(); ++mt)
        for (int l = 0; l < problem.num_bs(); ++l)
            if (l != mt && problem.channels[static_cast<std::size_t>(mt)][static_cast<std::size_t>(l)]
                                   .squaredNorm() > 0.0)
                return true;
    return false;
}

// Orthonormal basis of the directions that minimize leakage: the d weakest
// eigenvectors of q, widened to every eigenvector that is numerically as
// weak as the d-th one. `floor` is the absolute level treated as zero.
CMatrix leakage_minimizers(const CMatrix& q, int d, double floor) {
    const linalg::HermitianEigen e = linalg::hermitian_eigen(q);
    const auto n = static_cast<int>(q.rows());
    const double cutoff = std::max(e.values(n - d), 0.0) + floor;
    int k = d;
    while (k < n && e.values(n - 1 - k) <= cutoff) ++k;
    CMatrix basis(n, k);
    for (int j = 0; j < k; ++j) basis.col(j) = e.vectors.col(n - 1 - j);
    return basis;
}

// Among the columns of `basis`, the d directions with the most own-link
// gain through `link` (rows: far side, cols: this side).
CMatrix strongest_within(const CMatrix& basis, const CMatrix& link, int d) {
    if (basis.cols() == d) return basis;
    CMatrix out = basis * linalg::dominant_right_singular_vectors(link * basis, d);
    for (int j = 0; j < d; ++j) linalg::normalize_phase(out.col(j));
    return out;
}

} // namespace

namespace detail {
void validate_stream_counts(const DesignProblem& problem, const std::vector<int>& streams) {
    validate_streams(problem, streams);
}
} // namespace detail

// Alternating minimization of the total leakage
//   sum_b sum_{l != b} (P / d_l) || U_b^H G[b][l] V_l ||_F^2
// over orthonormal U_b (forward) and V_l (reciprocal network). Each half-step
// is an exact minimizer, so the leakage never increases.
BeamformerSolution ia_min_leakage(const DesignProblem& problem, const std::vector<int>& streams,
                                  const DesignOptions& options) {
    problem.validate();
    validate_streams(problem, streams);
    const int nb = problem.num_bs();
    const auto b = static_cast<std::size_t>(nb);

    BeamformerSolution s;
    for (std::size_t l = 0; l < b; ++l) {
        const int d = streams[l];
        s.precoders.push_back(linalg::dominant_right_singular_vectors(problem.channels[l][l], d));
        s.powers.push_back(RVector::Constant(d, problem.power / d));
    }
    std::vector<CMatrix> nulling(b);
    for (std::size_t m = 0; m < b; ++m)
        nulling[m] = linalg::dominant_left_singular_vectors(problem.channels[m][m], streams[m]);

    if (!has_cross_links(problem)) {
        // nothing to align; keep the eigen-beamforming start point
        s.trace.objective.push_back(0.0);
        s.trace.converged = true;
    } else {
        double scale = 0.0;
        for (std::size_t m = 0; m < b; ++m)
            for (std::size_t l = 0; l < b; ++l) scale = std::max(scale, problem.channels[m][l].squaredNorm());
        const double floor = 1e-13 * problem.power * scale;

        double previous = -1.0;
        for (int it = 0; it < options.ia_max_iters; ++it) {
            for (std::size_t m = 0; m < b; ++m) {
                const int nr = problem.n_rx(static_cast<int>(m));
                CMatrix q = CMatrix::Zero(nr, nr);
                for (std::size_t l = 0; l < b; ++l) {
                    if (l == m) continue;
                    const CMatrix gv = problem.channels[m][l] * s.precoders[l];
                    q += (problem.power / streams[l]) * gv * gv.adjoint();
                }
                // ties in the null space go to the strongest own-link directions
                const CMatrix own = (problem.channels[m][m] * s.precoders[m]).adjoint();
                nulling[m] = strongest_within(leakage_minimizers(q, streams[m], floor), own, streams[m]);
            }
            for (std::size_t l = 0; l < b; ++l) {
                const int nt = problem.n_tx(static_cast<int>(l));
                CMatrix q = CMatrix::Zero(nt, nt);
                for (std::size_t m = 0; m < b; ++m) {
                    if (m == l) continue;
                    const CMatrix gu = problem.channels[m][l].adjoint() * nulling[m];
                    q += (problem.power / streams[l]) * gu * gu.adjoint();
                }
                const CMatrix own = nulling[l].adjoint() * problem.channels[l][l];
                s.precoders[l] = strongest_within(leakage_minimizers(q, streams[l], floor), own, streams[l]);
            }
            s.nulling_combiners = nulling;
            const double leak = interference_leakage(s, problem);
            s.trace.objective.push_back(leak);
            s.trace.iterations = it + 1;
            if (previous >= 0.0 && previous - leak <= options.ia_tol * previous) {
                s.trace.converged = true;
                break;
            }
            if (leak == 0.0) {
                s.trace.converged = true;
                break;
            }
            previous = leak;
        }
    }

    s.nulling_combiners = std::move(nulling);
    s.combiners = mmse_combiners(problem, s.precoders, s.powers);
    check_solution(s, problem);
    return s;
}

} // namespace cbsim
