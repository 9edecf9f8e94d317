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

#ifndef CBSIM_LINALG_HPP
#define CBSIM_LINALG_HPP

#include "cbsim/types.hpp"

namespace cbsim::linalg {

// Eigen-decomposition of a Hermitian matrix with a reproducible basis.
//
// Eigenvalues are sorted nonincreasing (stable, so ties keep the lowest
// original index first). Each eigenvector is rotated so that its
// largest-magnitude entry is real and nonnegative; when several entries tie
// for the largest magnitude the lowest index wins.
struct HermitianEigen {
    RVector values;
    CMatrix vectors;
};

HermitianEigen hermitian_eigen(const CMatrix& a);

// Columns of the k largest / smallest eigenvalues, in that order.
CMatrix dominant_eigenvectors(const CMatrix& a, int k);
CMatrix weakest_eigenvectors(const CMatrix& a, int k);

// The k dominant right singular vectors of g (n_cols x k), phase-normalized.
CMatrix dominant_right_singular_vectors(const CMatrix& g, int k);
// The k dominant left singular vectors of g (n_rows x k), phase-normalized.
CMatrix dominant_left_singular_vectors(const CMatrix& g, int k);

// Rotates v in place so its largest-magnitude entry is real nonnegative.
void normalize_phase(Eigen::Ref<CVector> v);

// log2 det(a) for Hermitian positive definite a. Throws NumericalFailure
// when the Cholesky factorization fails.
double log2_det_hpd(const CMatrix& a);

// Solves a x = b for Hermitian positive definite a.
CMatrix solve_hpd(const CMatrix& a, const CMatrix& b);

// Symmetrizes numerically: (a + a^H) / 2.
CMatrix hermitian_part(const CMatrix& a);

} // namespace cbsim::linalg

#endif
