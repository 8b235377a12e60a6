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
#include <optional>

#include "simtrace/closure.hpp"
#include "simtrace/kinds.hpp"
#include "simtrace/matrix.hpp"

namespace simtrace {

/// Explicit isometries witnessing an equivalence.
///
/// Similarity kinds: A_i * left = left * B_i, no right factor.
/// Equivalence kinds: left * A_i = right-side B_i * right, i.e.
/// A_i = star(left) * B_i * right.
struct Certificate {
  Kind kind = Kind::UnitarySimilar;
  Matrix left;
  std::optional<Matrix> right;
  double residual = 0.0;
};

/// Unit-modulus theta with a = theta * b, given a a^* = b b^*. Real inputs
/// give theta = +1 or -1. Throws NotRankOneEqual when no such theta exists.
Complex phase_recover(const Matrix& a, const Matrix& b, double tol = 1e-10);

/// V with V * star(V) = I and A = B * V, given A star(A) = B star(B).
///
/// The conjugate-transpose case shares the left singular basis of
/// A A^* = B B^*: with A V1 = U D, the columns B^* u_i / sigma_i of V2 are
/// completed to an orthonormal basis by Gram-Schmidt against the standard
/// basis in index order, and V = V2 V1^*. The transpose case matches
/// nondegenerate row spaces and their bilinear complements (Witt
/// extension); it throws Degenerate when the row space of A is isotropic.
Matrix right_factor_recover(const Matrix& a, const Matrix& b, Star star, double tol = 1e-8);

struct EquivalenceConfig {
  std::uint64_t seed = 0;
  int trials = 8;
  double tol = kCertTol;
};

/// Gram alphabets -> similarity isometry U -> stacked right factor V.
/// Returns left = star(U) so that left * A_i = B_i * V.
Certificate equivalence_certificate(const MatrixSet& a, const MatrixSet& b, Kind kind,
                                    const EquivalenceConfig& config = {});

}  // namespace simtrace
