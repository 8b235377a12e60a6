// Copyright 2026 The simtrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "simtrace/matrix.hpp"

namespace simtrace::linalg {

/// Absolute floor applied under every relative tolerance.
inline constexpr double kNormFloor = 1e-14;

struct SvdResult {
  Matrix left;                         // rows x rows, unitary
  std::vector<double> singular_values;  // nonincreasing, length min(rows, cols)
  Matrix right;                        // cols x cols, unitary
};

/// Full SVD, A = left * diag(singular_values) * right^*. Real input gives real factors.
SvdResult svd(const Matrix& a);

/// Hermitian positive semi-definite square root.
///
/// Slightly negative eigenvalues (above -eig_rtol * ||H||_2) are clipped to
/// zero; anything lower throws NotPsd.
Matrix psd_sqrt(const Matrix& h, double herm_rtol = 1e-10, double eig_rtol = 1e-10);

/// Unitary factor of the polar decomposition, (P P^*)^{-1/2} P.
///
/// Computed from the SVD P = W S V^* as W V^*. Throws Singular when
/// sigma_min < cond_floor * sigma_max.
Matrix polar_unitary(const Matrix& p, double cond_floor = 1e-8);

/// Principal square root via the complex Schur form.
///
/// Throws BranchCut when an eigenvalue lies within axis_rtol * ||M||_F of the
/// closed negative real axis.
Matrix principal_sqrt(const Matrix& m, double axis_rtol = 1e-10);

// Raw-Eigen helpers shared by the higher modules.

/// Largest singular value.
double spectral_norm(const CMat& m);

/// sigma_min / sigma_max of a square matrix (0 for the zero matrix).
double inverse_condition(const CMat& m);

/// Orthonormal completion: returns a matrix whose first columns span the
/// given columns (assumed orthonormal) and whose remaining columns come from
/// Gram-Schmidt against the standard basis in index order.
CMat complete_orthonormal(const CMat& columns, Index n);

}  // namespace simtrace::linalg
