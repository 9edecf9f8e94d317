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
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cbsim;

namespace {

CMatrix random_matrix(int r, int c, std::uint64_t seed) {
    Rng rng(seed);
    return sample_channel(r, c, rng);
}

} // namespace

TEST(Linalg, HermitianEigenDescendingAndReconstructs) {
    const CMatrix g = random_matrix(5, 5, 3);
    const CMatrix a = g * g.adjoint();
    const auto e = linalg::hermitian_eigen(a);
    for (Eigen::Index i = 1; i < e.values.size(); ++i) EXPECT_GE(e.values(i - 1), e.values(i));
    const CMatrix back = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LT((back - a).norm(), 1e-12);
}

TEST(Linalg, PhaseConventionLargestEntryRealNonnegative) {
    const CMatrix g = random_matrix(4, 4, 9);
    const auto e = linalg::hermitian_eigen(g * g.adjoint());
    for (Eigen::Index c = 0; c < e.vectors.cols(); ++c) {
        Eigen::Index idx = 0;
        e.vectors.col(c).cwiseAbs().maxCoeff(&idx);
        EXPECT_NEAR(e.vectors(idx, c).imag(), 0.0, 1e-14);
        EXPECT_GE(e.vectors(idx, c).real(), 0.0);
    }
}

TEST(Linalg, SingularVectorsMatchEigenvectorsOfGram) {
    const CMatrix g = random_matrix(4, 8, 17);
    const CMatrix v = linalg::dominant_right_singular_vectors(g, 2);
    const CMatrix u = linalg::dominant_left_singular_vectors(g, 2);
    const CMatrix ve = linalg::dominant_eigenvectors(g.adjoint() * g, 2);
    const CMatrix ue = linalg::dominant_eigenvectors(g * g.adjoint(), 2);
    EXPECT_LT((v - ve).norm(), 1e-9);
    EXPECT_LT((u - ue).norm(), 1e-9);
}

TEST(Linalg, WeakestEigenvectorsSpanSmallestEigenvalues) {
    CMatrix a = CMatrix::Zero(3, 3);
    a(0, 0) = 3.0;
    a(1, 1) = 1.0;
    a(2, 2) = 2.0;
    const CMatrix w = linalg::weakest_eigenvectors(a, 1);
    EXPECT_NEAR(std::abs(w(1, 0)), 1.0, 1e-14);
}

TEST(Linalg, LogDetMatchesEigenvalueOracle) {
    const CMatrix g = random_matrix(6, 6, 5);
    const CMatrix a = g * g.adjoint() + CMatrix::Identity(6, 6);
    EXPECT_NEAR(linalg::log2_det_hpd(a), oracle::log2_det_eig(a), 1e-10);
}

TEST(Linalg, LogDetRejectsIndefinite) {
    CMatrix a = CMatrix::Identity(2, 2);
    a(1, 1) = -1.0;
    EXPECT_THROW(linalg::log2_det_hpd(a), NumericalFailure);
}

TEST(Linalg, SolveHpd) {
    const CMatrix g = random_matrix(4, 4, 2);
    const CMatrix a = g * g.adjoint() + CMatrix::Identity(4, 4);
    const CMatrix b = random_matrix(4, 2, 8);
    EXPECT_LT((a * linalg::solve_hpd(a, b) - b).norm(), 1e-12);
}
