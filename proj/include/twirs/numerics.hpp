// twirs  IRS-aided two-way relay link simulator
// Copyright (C) 2026 twirs contributors
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

#pragma once

#include "twirs/types.hpp"

namespace twirs
{

// arg(z) with the convention arg(0) = 0.
double phase_of(cdouble z);

// exp(i * phase_of(z)); maps 0 to 1.
cdouble unit_phase(cdouble z);

// Rotate v by a global phase so that its first component with modulus above
// 1e-12 * max|v_i| is real and nonnegative. The zero vector is left as is.
void canonicalize_phase(CVec &v);

struct EigenDecomposition
{
    std::vector<double> values; // ascending
    CMat vectors;               // orthonormal columns, vectors.col(i) pairs with values[i]
};

// Full eigendecomposition of a Hermitian matrix: Householder reduction to
// real tridiagonal form followed by implicit-shift QL. Deterministic.
EigenDecomposition hermitian_eigen(const CMat &a);

// Eigenvalues only (ascending); skips eigenvector accumulation.
std::vector<double> hermitian_eigenvalues(const CMat &a);

struct EigPair
{
    double value = 0.0;
    CVec vector; // unit norm, canonical phase
};

// Largest eigenvalue and a matching eigenvector. Small matrices (dim <= 64)
// go through the full decomposition; larger ones use power iteration on
// A + s*I with s = the infinity norm of A, so the target eigenvalue is the
// dominant one. Converged when ||A u - lambda u|| <= 1e-10 * max(1, ||A||_F).
// Among equal eigenvalues the first column in decomposition order wins.
EigPair principal_eigpair(const CMat &a);

// Nearest (Frobenius) positive semidefinite matrix: eigendecompose and clip
// negative eigenvalues to zero.
CMat psd_project(const CMat &a);

// Cholesky factor L (lower triangular, A ~= L * L^H) for a Hermitian PSD
// matrix that may be singular: pivots below 1e-9 * max|A_ij| produce an
// all-zero column, and a pivot below -1e-8 * max|A_ij| raises
// numerical_error because the input is not PSD within tolerance.
CMat chol_psd(const CMat &a);

} // namespace twirs
