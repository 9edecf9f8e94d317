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

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cbsim::linalg {

void normalize_phase(Eigen::Ref<CVector> v) {
    if (v.size() == 0) return;
    Eigen::Index best = 0;
    double best_mag = std::abs(v(0));
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        // strict comparison keeps the lowest index on ties (up to rounding)
        if (mag > best_mag * (1.0 + 1e-12)) {
            best = i;
            best_mag = mag;
        }
    }
    if (best_mag == 0.0) return;
    v *= std::conj(v(best)) / best_mag;
    v(best) = cplx(std::abs(v(best)), 0.0);
}

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

HermitianEigen hermitian_eigen(const CMatrix& a) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a));
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("Hermitian eigendecomposition did not converge");
    const Eigen::Index n = a.rows();
    // solver output is ascending; reverse into a stable descending order
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const RVector& ev = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return ev(i) > ev(j); });
    HermitianEigen out{RVector(n), CMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = ev(order[static_cast<std::size_t>(k)]);
        out.vectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
        normalize_phase(out.vectors.col(k));
    }
    return out;
}

CMatrix dominant_eigenvectors(const CMatrix& a, int k) {
    return hermitian_eigen(a).vectors.leftCols(k);
}

CMatrix weakest_eigenvectors(const CMatrix& a, int k) {
    const HermitianEigen e = hermitian_eigen(a);
    const Eigen::Index n = a.rows();
    CMatrix out(n, k);
    for (int j = 0; j < k; ++j) out.col(j) = e.vectors.col(n - 1 - j);
    return out;
}

CMatrix dominant_right_singular_vectors(const CMatrix& g, int k) {
    Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeFullV);
    CMatrix v = svd.matrixV().leftCols(k);
    for (int j = 0; j < k; ++j) normalize_phase(v.col(j));
    return v;
}

CMatrix dominant_left_singular_vectors(const CMatrix& g, int k) {
    Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeFullU);
    CMatrix u = svd.matrixU().leftCols(k);
    for (int j = 0; j < k; ++j) normalize_phase(u.col(j));
    return u;
}

double log2_det_hpd(const CMatrix& a) {
    Eigen::LLT<CMatrix> llt(hermitian_part(a));
    if (llt.info() != Eigen::Success)
        throw NumericalFailure("matrix is not positive definite");
    double acc = 0.0;
    const CMatrix& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) acc += std::log2(l(i, i).real());
    return 2.0 * acc;
}

CMatrix solve_hpd(const CMatrix& a, const CMatrix& b) {
    Eigen::LLT<CMatrix> llt(hermitian_part(a));
    if (llt.info() != Eigen::Success)
        throw NumericalFailure("matrix is not positive definite");
    return llt.solve(b);
}

} // namespace cbsim::linalg
