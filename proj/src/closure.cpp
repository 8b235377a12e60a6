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

#include "simtrace/closure.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace simtrace {

MatrixSet::MatrixSet(std::vector<Matrix> matrices, std::vector<std::string> labels)
    : matrices_(std::move(matrices)), labels_(std::move(labels)) {
  if (matrices_.empty()) throw Error(ErrorCode::InvalidInput, "matrix set must be nonempty");
  if (!labels_.empty() && labels_.size() != matrices_.size()) {
    throw Error(ErrorCode::InvalidInput, "label count does not match matrix count");
  }
  labels_.resize(matrices_.size());
  const Matrix& first = matrices_.front();
  for (std::size_t i = 0; i < matrices_.size(); ++i) {
    const Matrix& m = matrices_[i];
    if (m.rows() != first.rows() || m.cols() != first.cols()) {
      throw Error(ErrorCode::InvalidInput, "matrix set members differ in shape");
    }
    if (m.field() != first.field()) {
      throw Error(ErrorCode::InvalidInput, "matrix set members differ in field");
    }
    if (labels_[i].empty()) labels_[i] = "A" + std::to_string(i + 1);
  }
}

double MatrixSet::max_norm() const {
  double out = 0.0;
  for (const auto& m : matrices_) out = std::max(out, m.norm());
  return out;
}

bool MatrixSet::all_zero() const {
  return std::all_of(matrices_.begin(), matrices_.end(),
                     [](const Matrix& m) { return m.values().isZero(0.0); });
}

std::string star_suffix(Star s) { return s == Star::Transpose ? "^t" : "*"; }

namespace {

CMat vectorize(const std::vector<Matrix>& members) {
  const Index len = members.front().rows() * members.front().cols();
  CMat cols(len, static_cast<Index>(members.size()));
  for (std::size_t j = 0; j < members.size(); ++j) {
    cols.col(static_cast<Index>(j)) = members[j].values().reshaped();
  }
  return cols;
}

Eigen::VectorXcd ls_coefficients(const CMat& basis, const Eigen::VectorXcd& target) {
  Eigen::CompleteOrthogonalDecomposition<CMat> cod(basis);
  cod.setThreshold(1e-12);
  return cod.solve(target);
}

void require_square(const MatrixSet& s, const char* what) {
  if (!s.is_square()) throw Error(ErrorCode::InvalidShape, std::string(what) + " needs square matrices");
}

}  // namespace

double span_residual(const std::vector<Matrix>& members, const Matrix& target) {
  const CMat basis = vectorize(members);
  const Eigen::VectorXcd b = target.values().reshaped();
  const Eigen::VectorXcd x = ls_coefficients(basis, b);
  return (basis * x - b).norm();
}

bool is_star_closed(const MatrixSet& s, Star star, double tol) {
  require_square(s, "is_star_closed");
  for (const auto& m : s.matrices()) {
    if (span_residual(s.matrices(), m.star(star)) > tol * std::max(1.0, m.norm())) return false;
  }
  return true;
}

MatrixSet star_augment(const MatrixSet& s, Star star) {
  require_square(s, "star_augment");
  std::vector<Matrix> members = s.matrices();
  std::vector<std::string> labels = s.labels();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Matrix candidate = s[i].star(star);
    if (span_residual(members, candidate) > kSpanRtol * std::max(1.0, s[i].norm())) {
      members.push_back(candidate);
      labels.push_back(s.labels()[i] + star_suffix(star));
    }
  }
  return MatrixSet(std::move(members), std::move(labels));
}

std::pair<MatrixSet, MatrixSet> star_augment_pair(const MatrixSet& a, const MatrixSet& b,
                                                  Star star) {
  require_square(a, "star_augment_pair");
  require_square(b, "star_augment_pair");
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidInput, "set cardinalities differ");
  std::vector<Matrix> ma = a.matrices(), mb = b.matrices();
  std::vector<std::string> la = a.labels(), lb = b.labels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Matrix sa = a[i].star(star);
    const Matrix sb = b[i].star(star);
    const CMat basis_a = vectorize(ma);
    const Eigen::VectorXcd ta = sa.values().reshaped();
    const Eigen::VectorXcd coef = ls_coefficients(basis_a, ta);
    const double res_a = (basis_a * coef - ta).norm();
    const double res_b = (vectorize(mb) * coef - Eigen::VectorXcd(sb.values().reshaped())).norm();
    const double scale = std::max({1.0, a[i].norm(), b[i].norm()});
    if (res_a <= kSpanRtol * scale && res_b <= kSpanRtol * scale) continue;
    ma.push_back(sa);
    mb.push_back(sb);
    la.push_back(a.labels()[i] + star_suffix(star));
    lb.push_back(b.labels()[i] + star_suffix(star));
  }
  return {MatrixSet(std::move(ma), std::move(la)), MatrixSet(std::move(mb), std::move(lb))};
}

bool is_jordan_closed(const MatrixSet& s, double tol) {
  require_square(s, "is_jordan_closed");
  for (const auto& m : s.matrices()) {
    if (!m.is_real()) throw Error(ErrorCode::InvalidInput, "Jordan closure test needs real matrices");
    if ((m.values() - m.values().transpose()).norm() > tol * std::max(1.0, m.norm())) {
      throw Error(ErrorCode::InvalidInput, "Jordan closure test needs symmetric matrices");
    }
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i; j < s.size(); ++j) {
      const Matrix anti = s[i] * s[j] + s[j] * s[i];
      if (span_residual(s.matrices(), anti) > tol * std::max(1.0, anti.norm())) return false;
    }
  }
  return true;
}

namespace {

std::vector<Complex> poly_from_roots(const Eigen::VectorXcd& roots) {
  std::vector<Complex> c{Complex(1.0)};
  for (Index i = 0; i < roots.size(); ++i) {
    c.push_back(Complex(0.0));
    for (std::size_t j = c.size() - 1; j > 0; --j) c[j] -= roots(i) * c[j - 1];
  }
  return c;
}

Eigen::VectorXcd eigenvalues(const Matrix& m) {
  if (m.is_real()) {
    Eigen::EigenSolver<RMat> es(m.real_values(), false);
    return es.eigenvalues();
  }
  Eigen::ComplexEigenSolver<CMat> es(m.values(), false);
  return es.eigenvalues();
}

}  // namespace

std::vector<Complex> characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::InvalidShape, "characteristic polynomial needs a square matrix");
  return poly_from_roots(eigenvalues(m));
}

bool pencil_charpoly_probe(const MatrixSet& a, const MatrixSet& b, int samples,
                           std::uint64_t rng_seed, double tol) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidInput, "set cardinalities differ");
  require_square(a, "pencil_charpoly_probe");
  require_square(b, "pencil_charpoly_probe");
  if (a.rows() != b.rows()) throw Error(ErrorCode::InvalidInput, "set dimensions differ");
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const Index n = a.rows();
  for (int s = 0; s < samples; ++s) {
    Matrix pa = Matrix::zero(n, n, a.field());
    Matrix pb = Matrix::zero(n, n, b.field());
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double t = coef(rng);
      pa = pa + Complex(t) * a[i];
      pb = pb + Complex(t) * b[i];
    }
    const Eigen::VectorXcd ea = eigenvalues(pa);
    const Eigen::VectorXcd eb = eigenvalues(pb);
    const std::vector<Complex> ca = poly_from_roots(ea);
    const std::vector<Complex> cb = poly_from_roots(eb);
    // |c_j| <= binom(n, j) * rho^j for spectral radius rho.
    const double rho = std::max(ea.cwiseAbs().maxCoeff(), eb.cwiseAbs().maxCoeff());
    const std::vector<Complex> scale =
        poly_from_roots(Eigen::VectorXcd::Constant(n, Complex(-rho)));
    for (std::size_t j = 0; j < ca.size(); ++j) {
      if (std::abs(ca[j] - cb[j]) > tol * std::max(1.0, std::abs(scale[j]))) return false;
    }
  }
  return true;
}

}  // namespace simtrace
