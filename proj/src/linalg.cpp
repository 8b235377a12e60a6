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

#include "simtrace/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace simtrace::linalg {

namespace {

double scaled(double rtol, double norm) { return rtol * std::max(norm, kNormFloor); }

}  // namespace

SvdResult svd(const Matrix& a) {
  SvdResult out;
  if (a.is_real()) {
    Eigen::JacobiSVD<RMat> s(a.real_values(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.left = Matrix::from_real(s.matrixU());
    out.right = Matrix::from_real(s.matrixV());
    const auto& sv = s.singularValues();
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
  } else {
    Eigen::JacobiSVD<CMat> s(a.values(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.left = Matrix::from_complex(s.matrixU());
    out.right = Matrix::from_complex(s.matrixV());
    const auto& sv = s.singularValues();
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
  }
  return out;
}

Matrix psd_sqrt(const Matrix& h, double herm_rtol, double eig_rtol) {
  if (!h.is_square()) throw Error(ErrorCode::InvalidShape, "psd_sqrt needs a square matrix");
  const double hnorm = h.norm();
  if ((h.values() - h.values().adjoint()).norm() > scaled(herm_rtol, hnorm)) {
    throw Error(ErrorCode::NotPsd, "matrix is not hermitian");
  }
  const CMat sym = 0.5 * (h.values() + h.values().adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(sym);
  Eigen::VectorXd ev = es.eigenvalues();
  const double radius = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
  // roundoff-level eigenvalues count as zero
  const double noise = 8.0 * static_cast<double>(ev.size()) *
                       std::numeric_limits<double>::epsilon() * radius;
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -scaled(eig_rtol, radius)) {
      throw Error(ErrorCode::NotPsd, "matrix has a negative eigenvalue");
    }
    ev(i) = ev(i) <= noise ? 0.0 : std::sqrt(ev(i));
  }
  const CMat& q = es.eigenvectors();
  CMat s = q * ev.cast<Complex>().asDiagonal() * q.adjoint();
  s = 0.5 * (s + s.adjoint()).eval();
  if (h.is_real()) return Matrix::from_real(s.real());
  return Matrix::from_complex(std::move(s));
}

Matrix polar_unitary(const Matrix& p, double cond_floor) {
  if (!p.is_square()) throw Error(ErrorCode::InvalidShape, "polar_unitary needs a square matrix");
  const SvdResult s = svd(p);
  const double smax = s.singular_values.front();
  const double smin = s.singular_values.back();
  if (!(smax > 0.0) || smin < cond_floor * smax) {
    throw Error(ErrorCode::Singular, "matrix is too close to singular for a polar factor");
  }
  return s.left * s.right.adjoint();
}

Matrix principal_sqrt(const Matrix& m, double axis_rtol) {
  if (!m.is_square()) throw Error(ErrorCode::InvalidShape, "principal_sqrt needs a square matrix");
  const double tol = scaled(axis_rtol, m.norm());
  Eigen::ComplexSchur<CMat> schur(m.values());
  const CMat& t = schur.matrixT();
  const Index n = t.rows();
  CMat r = CMat::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const Complex lambda = t(i, i);
    if (std::abs(lambda.imag()) <= tol && lambda.real() <= tol) {
      throw Error(ErrorCode::BranchCut, "eigenvalue on the closed negative real axis");
    }
    r(i, i) = std::sqrt(lambda);
  }
  // Upper triangular recurrence, one superdiagonal at a time.
  for (Index d = 1; d < n; ++d) {
    for (Index i = 0; i + d < n; ++i) {
      const Index j = i + d;
      Complex acc = t(i, j);
      for (Index k = i + 1; k < j; ++k) acc -= r(i, k) * r(k, j);
      r(i, j) = acc / (r(i, i) + r(j, j));
    }
  }
  const CMat& q = schur.matrixU();
  CMat s = q * r * q.adjoint();
  if (m.is_real()) return Matrix::from_real(s.real());
  return Matrix::from_complex(std::move(s));
}

double spectral_norm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> s(m);
  return s.singularValues()(0);
}

double inverse_condition(const CMat& m) {
  Eigen::JacobiSVD<CMat> s(m);
  const auto& sv = s.singularValues();
  if (sv.size() == 0 || !(sv(0) > 0.0)) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

CMat complete_orthonormal(const CMat& columns, Index n) {
  CMat out(n, n);
  Index filled = 0;
  for (Index j = 0; j < columns.cols() && filled < n; ++j) out.col(filled++) = columns.col(j);
  for (Index e = 0; e < n && filled < n; ++e) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Unit(n, e);
    // two passes of modified Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass) {
      for (Index k = 0; k < filled; ++k) v -= out.col(k).dot(v) * out.col(k);
    }
    const double nv = v.norm();
    if (nv > 1e-3) out.col(filled++) = v / nv;
  }
  return out;
}

}  // namespace simtrace::linalg
