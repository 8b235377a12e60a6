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
#include <string>
#include <utility>
#include <vector>

#include "simtrace/matrix.hpp"

namespace simtrace {

/// Nonempty ordered set {A_1, ..., A_k} of matrices sharing shape and field.
class MatrixSet {
 public:
  MatrixSet() = default;
  /// Empty labels are replaced by "A1", "A2", ... (positional). Throws
  /// InvalidInput on an empty set, mixed shapes or mixed fields.
  explicit MatrixSet(std::vector<Matrix> matrices, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return matrices_.size(); }
  const Matrix& operator[](std::size_t i) const { return matrices_[i]; }
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  Index rows() const { return matrices_.front().rows(); }
  Index cols() const { return matrices_.front().cols(); }
  bool is_square() const { return rows() == cols(); }
  Field field() const { return matrices_.front().field(); }

  /// Largest member Frobenius norm.
  double max_norm() const;
  bool all_zero() const;

 private:
  std::vector<Matrix> matrices_;
  std::vector<std::string> labels_;
};

/// Label suffix used for starred letters: "*" or "^t".
std::string star_suffix(Star s);

/// Relative residual threshold for span membership tests.
inline constexpr double kSpanRtol = 1e-10;

/// Least-squares residual of `target` against span{members} (vectorized).
double span_residual(const std::vector<Matrix>& members, const Matrix& target);

/// True iff every star(M) lies in span{S} within tol * max(1, ||M||_F).
bool is_star_closed(const MatrixSet& s, Star star, double tol = kSpanRtol);

/// S together with the starred members not already in the span.
MatrixSet star_augment(const MatrixSet& s, Star star);

/// Augments A and B in lockstep so the i-th letters keep corresponding. A
/// star letter is omitted only when star(A_i) is in span{A} and the same
/// coefficients reproduce star(B_i) from {B}.
std::pair<MatrixSet, MatrixSet> star_augment_pair(const MatrixSet& a, const MatrixSet& b,
                                                  Star star);

/// True iff all anticommutators XY + YX of members lie in the span.
/// Members must be real symmetric; otherwise InvalidInput.
bool is_jordan_closed(const MatrixSet& s, double tol = kSpanRtol);

/// Characteristic polynomial coefficients (monic, highest degree first),
/// computed from eigenvalues.
std::vector<Complex> characteristic_polynomial(const Matrix& m);

/// Compares char polys of sum t_i A_i and sum t_i B_i for `samples` random
/// t drawn uniformly from [-1, 1]^k. Necessary, not sufficient, for
/// simultaneous similarity.
bool pencil_charpoly_probe(const MatrixSet& a, const MatrixSet& b, int samples,
                           std::uint64_t rng_seed, double tol = 1e-8);

}  // namespace simtrace
