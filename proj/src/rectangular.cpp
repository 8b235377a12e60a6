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

#include "simtrace/rectangular.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "simtrace/fingerprint.hpp"
#include "simtrace/linalg.hpp"

namespace simtrace {

Complex phase_recover(const Matrix& a, const Matrix& b, double tol) {
  if (a.cols() != 1 || b.cols() != 1 || a.rows() != b.rows()) {
    throw Error(ErrorCode::InvalidShape, "phase_recover needs column vectors of equal length");
  }
  const CMat& av = a.values();
  const CMat& bv = b.values();
  const double na = av.norm();
  const double nb = bv.norm();
  if (nb == 0.0) {
    if (na == 0.0) return Complex(1.0);
    throw Error(ErrorCode::NotRankOneEqual, "b is zero but a is not");
  }
  if ((av * av.adjoint() - bv * bv.adjoint()).norm() > tol * std::max(1.0, na * na)) {
    throw Error(ErrorCode::NotRankOneEqual, "a a^* differs from b b^*");
  }
  const Complex inner = (bv.adjoint() * av)(0, 0);
  if (std::abs(inner) == 0.0) throw Error(ErrorCode::NotRankOneEqual, "a is orthogonal to b");
  Complex theta = inner / std::abs(inner);
  if (a.is_real() && b.is_real()) theta = Complex(theta.real() >= 0.0 ? 1.0 : -1.0);
  if ((av - theta * bv).norm() > tol * std::max(1.0, nb)) {
    throw Error(ErrorCode::NotRankOneEqual, "a is not a phase multiple of b");
  }
  return theta;
}

namespace {

Index numerical_rank(const Eigen::VectorXd& sv, double rtol) {
  if (sv.size() == 0 || !(sv(0) > 0.0)) return 0;
  Index r = 0;
  while (r < sv.size() && sv(r) > rtol * sv(0)) ++r;
  return r;
}

// Columns made orthonormal by two-pass modified Gram-Schmidt, order kept.
CMat orthonormalize(CMat cols) {
  for (Index j = 0; j < cols.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Index k = 0; k < j; ++k) cols.col(j) -= cols.col(k).dot(cols.col(j)) * cols.col(k);
    }
    cols.col(j).normalize();
  }
  return cols;
}

Matrix with_field(CMat v, Field f) {
  if (f == Field::Real) return Matrix::from_real(v.real());
  return Matrix::from_complex(std::move(v));
}

bool recovered(const Matrix& a, const Matrix& b, const Matrix& v, Star star) {
  const double residual = (a.values() - b.values() * v.values()).norm();
  return residual <= kCertTol * std::max(1.0, a.norm()) && isometry_defect(v, star) <= kCertTol;
}

Matrix recover_conjugate(const Matrix& a, const Matrix& b, Field field) {
  const Index n = a.cols();
  Eigen::JacobiSVD<CMat> sa(a.values(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Index r = numerical_rank(sa.singularValues(), 1e-10);
  const CMat& u = sa.matrixU();
  const CMat& v1 = sa.matrixV();
  CMat head(n, r);
  for (Index i = 0; i < r; ++i) {
    head.col(i) = b.values().adjoint() * u.col(i) / sa.singularValues()(i);
  }
  const CMat v2 = linalg::complete_orthonormal(orthonormalize(head), n);
  Matrix v = with_field(v2 * v1.adjoint(), field);
  if (recovered(a, b, v, Star::ConjugateTranspose)) return v;
  // Orthogonal Procrustes: any maximizer of Re tr(V^* B^* A) gives A = B V
  // exactly when such a unitary V exists.
  Eigen::JacobiSVD<CMat> sp(b.values().adjoint() * a.values(),
                            Eigen::ComputeFullU | Eigen::ComputeFullV);
  v = with_field(sp.matrixU() * sp.matrixV().adjoint(), field);
  if (recovered(a, b, v, Star::ConjugateTranspose)) return v;
  throw Error(ErrorCode::Degenerate, "right factor recovery did not meet tolerance");
}

// Rows of `null_rows` rescaled so that N N^t = I under the bilinear form.
CMat bilinear_orthonormal(const CMat& null_rows, std::mt19937_64& rng) {
  if (null_rows.rows() == 0) return null_rows;
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Index d = null_rows.rows();
  CMat mixed = null_rows;
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      const Matrix root = linalg::principal_sqrt(Matrix::from_complex(mixed * mixed.transpose()));
      return root.values().partialPivLu().solve(mixed);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BranchCut) throw;
    }
    CMat mix(d, d);
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) mix(i, j) = Complex(gauss(rng), gauss(rng));
    }
    mixed = mix * null_rows;
  }
  throw Error(ErrorCode::Degenerate, "complement Gram matrix stays on the branch cut");
}

Matrix recover_transpose(const Matrix& a, const Matrix& b, Field field) {
  const Index n = a.cols();
  Eigen::JacobiSVD<CMat> sa(a.values());
  Eigen::JacobiSVD<CMat> sb(b.values());
  Eigen::JacobiSVD<CMat> sg(a.values() * a.values().transpose());
  const Index r = numerical_rank(sa.singularValues(), 1e-9);
  if (numerical_rank(sb.singularValues(), 1e-9) != r) {
    throw Error(ErrorCode::Degenerate, "A and B have different ranks");
  }
  const double gscale = std::max(sa.singularValues()(0) * sa.singularValues()(0), linalg::kNormFloor);
  Index rg = 0;
  while (rg < sg.singularValues().size() && sg.singularValues()(rg) > 1e-9 * gscale) ++rg;
  if (rg != r) throw Error(ErrorCode::Degenerate, "row space is isotropic for the bilinear form");
  if (r == 0) return Matrix::identity(n, field);

  // r independent rows of A, chosen by column-pivoted QR of A^t.
  Eigen::ColPivHouseholderQR<CMat> qr(a.values().transpose());
  const auto& perm = qr.colsPermutation().indices();
  CMat abar(r, n), bbar(r, n);
  for (Index i = 0; i < r; ++i) {
    abar.row(i) = a.values().row(perm(i));
    bbar.row(i) = b.values().row(perm(i));
  }

  std::mt19937_64 rng(0x5eed);
  auto frame = [&](const CMat& head) {
    CMat full(n, n);
    full.topRows(r) = head;
    if (r < n) {
      Eigen::JacobiSVD<CMat> sh(head, Eigen::ComputeFullV);
      // x with head * x = 0 spans the bilinear complement of the row space
      const CMat null_rows = sh.matrixV().rightCols(n - r).transpose();
      full.bottomRows(n - r) = bilinear_orthonormal(null_rows, rng);
    }
    return full;
  };
  const CMat fa = frame(abar);
  const CMat fb = frame(bbar);
  Matrix v = with_field(fb.partialPivLu().solve(fa), field);
  if (recovered(a, b, v, Star::Transpose)) return v;
  throw Error(ErrorCode::Degenerate, "transpose right factor recovery did not meet tolerance");
}

}  // namespace

Matrix right_factor_recover(const Matrix& a, const Matrix& b, Star star, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::InvalidShape, "right_factor_recover needs equal shapes");
  }
  const CMat ga = a.values() * apply_star(a.values(), star);
  const CMat gb = b.values() * apply_star(b.values(), star);
  if ((ga - gb).norm() > tol * std::max(1.0, a.norm() * a.norm())) {
    throw Error(ErrorCode::GramMismatch, "A star(A) differs from B star(B)");
  }
  const Field field = join(a.field(), b.field());
  if (star == Star::ConjugateTranspose || field == Field::Real) return recover_conjugate(a, b, field);
  return recover_transpose(a, b, field);
}

Certificate equivalence_certificate(const MatrixSet& a, const MatrixSet& b, Kind kind,
                                    const EquivalenceConfig& config) {
  if (is_similarity(kind)) throw Error(ErrorCode::InvalidInput, "not an equivalence kind");
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidInput, "set cardinalities differ");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::InvalidInput, "set dimensions differ");
  }
  const Index m = a.rows();
  const Index n = a.cols();
  const Field field = requires_real(kind) ? Field::Real : join(a.field(), b.field());
  if (requires_real(kind) && (a.field() != Field::Real || b.field() != Field::Real)) {
    throw Error(ErrorCode::InvalidInput, "orthogonal equivalence needs real sets");
  }
  if (a.all_zero() && b.all_zero()) {
    return Certificate{kind, Matrix::identity(m, field), Matrix::identity(n, field), 0.0};
  }
  const Star star = kind_star(kind);
  const MatrixSet ga = gram_alphabet(a, star);
  const MatrixSet gb = gram_alphabet(b, star);
  const Matrix u = find_similarity_isometry(ga, gb, isometry_kind(kind), config.seed,
                                            config.trials, config.tol);
  const Matrix left = u.star(star);

  const auto k = static_cast<Index>(a.size());
  CMat x(k * m, n), y(k * m, n);
  for (Index i = 0; i < k; ++i) {
    x.middleRows(i * m, m) = left.values() * a[i].values();
    y.middleRows(i * m, m) = b[i].values();
  }
  const Matrix v = right_factor_recover(with_field(x, field), with_field(y, field), star,
                                        std::max(config.tol, 1e-8));
  double residual = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    residual = std::max(residual,
                        (left.values() * a[i].values() - b[i].values() * v.values()).norm());
  }
  return Certificate{kind, left, v, residual};
}

}  // namespace simtrace
