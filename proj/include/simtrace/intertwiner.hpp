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

#include <cstdint>
#include <random>
#include <vector>

#include "simtrace/closure.hpp"
#include "simtrace/matrix.hpp"

namespace simtrace {

enum class IsometryKind { Unitary, RealOrthogonal, ComplexOrthogonal };

/// Involution under which the isometry is defined: W * star(W) = I.
Star isometry_star(IsometryKind kind);

/// Orthonormal basis (entrywise inner product) of {X : A_i X = X B_i for all i}.
struct SylvesterBasis {
  Index dimension = 0;  // matrix size n
  Field field = Field::Complex;
  std::vector<Matrix> basis;
  /// max over basis elements of max_i ||A_i X - X B_i||_F / ||X||_F.
  double residual_bound = 0.0;
};

inline constexpr double kNullRtol = 1e-10;
inline constexpr double kCertTol = 1e-8;

/// Null space of X -> (A_1 X - X B_1, ..., A_k X - X B_k) from the singular
/// vectors with singular value <= null_rtol * sigma_max. Solved over the
/// reals when both sets are real.
SylvesterBasis joint_sylvester_basis(const MatrixSet& a, const MatrixSet& b,
                                     double null_rtol = kNullRtol);

/// Random Gaussian combination of the basis with sigma_min >= 1e-8 * sigma_max.
/// Throws NoIntertwiner on an empty basis and SingularFamily if every trial
/// is near-singular.
Matrix pick_invertible(const SylvesterBasis& basis, std::uint64_t rng_seed, int trials);

/// max_i ||A_i W - W B_i||_F.
double intertwining_residual(const Matrix& w, const MatrixSet& a, const MatrixSet& b);

/// ||W * star(W) - I||_F.
double isometry_defect(const Matrix& w, Star star);

/// Upgrades an invertible intertwiner P to an isometric one.
///
/// Unitary: polar factor (PP^*)^{-1/2} P. RealOrthogonal: polar factor of
/// Re(P) + t Im(P) for a random real t (Re(P) itself when P is real).
/// ComplexOrthogonal: principal_sqrt(P P^t)^{-1} P.
///
/// The star-closure hypothesis (P^* A_i = B_i P^*, or with transpose) must
/// hold for the result to intertwine; both postconditions are re-checked and
/// a failure throws VerificationFailed. BranchCut propagates from the
/// complex-orthogonal square root.
Matrix similarity_to_isometry(const Matrix& p, const MatrixSet& a, const MatrixSet& b,
                              IsometryKind kind, std::uint64_t rng_seed = 0,
                              double tol = kCertTol);

/// Basis, pick and upgrade with up to `trials` fresh draws of P.
Matrix find_similarity_isometry(const MatrixSet& a, const MatrixSet& b, IsometryKind kind,
                                std::uint64_t rng_seed, int trials, double tol = kCertTol);

/// Deterministic stream derivation for the seeded generators.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace simtrace
