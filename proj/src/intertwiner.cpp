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

#include "simtrace/intertwiner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "simtrace/linalg.hpp"

namespace simtrace {

Star isometry_star(IsometryKind kind) {
  return kind == IsometryKind::ComplexOrthogonal ? Star::Transpose : Star::ConjugateTranspose;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over (seed, stream)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

template <class Mat>
Mat stacked_operator(const std::vector<Mat>& as, const std::vector<Mat>& bs, Index n) {
  const Index n2 = n * n;
  Mat op(static_cast<Index>(as.size()) * n2, n2);
  const Mat eye = Mat::Identity(n, n);
  // column-major vec: vec(AX) = (I (x) A) vec X, vec(XB) = (B^t (x) I) vec X
  for (std::size_t i = 0; i < as.size(); ++i) {
    auto block = op.middleRows(static_cast<Index>(i) * n2, n2);
    for (Index q = 0; q < n; ++q) {
      for (Index p = 0; p < n; ++p) {
        block.block(q * n, p * n, n, n) = eye(q, p) * as[i] - bs[i](p, q) * eye;
      }
    }
  }
  return op;
}

template <class Mat>
std::vector<Mat> null_space(const Mat& op, double null_rtol) {
  const Index cols = op.cols();
  Mat square;
  if (op.rows() > cols) {
    Eigen::HouseholderQR<Mat> qr(op);
    square = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();
  } else {
    square = op;
  }
  Eigen::JacobiSVD<Mat> svd(square, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  std::vector<Mat> out;
  for (Index j = 0; j < cols; ++j) {
    const double s = j < sv.size() ? sv(j) : 0.0;
    if (s <= null_rtol * smax) out.push_back(svd.matrixV().col(j));
  }
  return out;
}

template <class Mat>
std::vector<Mat> raw(const MatrixSet& s) {
  std::vector<Mat> out;
  for (const auto& m : s.matrices()) {
    if constexpr (std::is_same_v<Mat, RMat>) {
      out.push_back(m.real_values());
    } else {
      out.push_back(m.values());
    }
  }
  return out;
}

double set_scale(const MatrixSet& a, const MatrixSet& b) {
  return std::max({a.max_norm(), b.max_norm(), linalg::kNormFloor});
}

}  // namespace

SylvesterBasis joint_sylvester_basis(const MatrixSet& a, const MatrixSet& b, double null_rtol) {
  if (!a.is_square() || !b.is_square()) {
    throw Error(ErrorCode::InvalidInput, "Sylvester system needs square matrices");
  }
  if (a.size() != b.size() || a.rows() != b.rows()) {
    throw Error(ErrorCode::InvalidInput, "sets differ in cardinality or dimension");
  }
  const Index n = a.rows();
  SylvesterBasis out;
  out.dimension = n;
  out.field = join(a.field(), b.field());
  if (out.field == Field::Real) {
    for (const RMat& v : null_space(stacked_operator(raw<RMat>(a), raw<RMat>(b), n), null_rtol)) {
      out.basis.push_back(Matrix::from_real(v.reshaped(n, n)));
    }
  } else {
    for (const CMat& v : null_space(stacked_operator(raw<CMat>(a), raw<CMat>(b), n), null_rtol)) {
      out.basis.push_back(Matrix::from_complex(v.reshaped(n, n)));
    }
  }
  for (const auto& x : out.basis) {
    out.residual_bound = std::max(out.residual_bound, intertwining_residual(x, a, b) / x.norm());
  }
  return out;
}

Matrix pick_invertible(const SylvesterBasis& basis, std::uint64_t rng_seed, int trials) {
  if (basis.basis.empty()) throw Error(ErrorCode::NoIntertwiner, "intertwiner space is empty");
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Index n = basis.dimension;
  for (int t = 0; t < std::max(trials, 1); ++t) {
    CMat p = CMat::Zero(n, n);
    for (const auto& x : basis.basis) {
      Complex c(gauss(rng), 0.0);
      if (basis.field == Field::Complex) c = Complex(c.real(), gauss(rng)) / std::sqrt(2.0);
      p += c * x.values();
    }
    if (linalg::inverse_condition(p) >= 1e-8) {
      return basis.field == Field::Real ? Matrix::from_real(p.real()) : Matrix::from_complex(p);
    }
  }
  throw Error(ErrorCode::SingularFamily, "no well-conditioned intertwiner in " +
                                             std::to_string(trials) + " trials");
}

double intertwining_residual(const Matrix& w, const MatrixSet& a, const MatrixSet& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out = std::max(out, (a[i].values() * w.values() - w.values() * b[i].values()).norm());
  }
  return out;
}

double isometry_defect(const Matrix& w, Star star) {
  const CMat prod = w.values() * apply_star(w.values(), star);
  return (prod - CMat::Identity(prod.rows(), prod.cols())).norm();
}

Matrix similarity_to_isometry(const Matrix& p, const MatrixSet& a, const MatrixSet& b,
                              IsometryKind kind, std::uint64_t rng_seed, double tol) {
  if (!p.is_square() || p.rows() != a.rows() || a.size() != b.size()) {
    throw Error(ErrorCode::InvalidInput, "intertwiner shape does not match the sets");
  }
  const double scale = set_scale(a, b);
  if (intertwining_residual(p, a, b) > tol * p.norm() * scale) {
    throw Error(ErrorCode::NotAnIntertwiner, "P does not intertwine the sets");
  }
  Matrix w;
  switch (kind) {
    case IsometryKind::Unitary:
      w = linalg::polar_unitary(p);
      break;
    case IsometryKind::RealOrthogonal: {
      if (a.field() != Field::Real || b.field() != Field::Real) {
        throw Error(ErrorCode::InvalidInput, "real orthogonal similarity needs real sets");
      }
      Matrix real_p;
      if (p.is_real()) {
        real_p = p;
      } else {
        // det(Re P + t Im P) is a nonzero polynomial in t when P is invertible
        std::mt19937_64 rng(rng_seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double best = -1.0;
        for (int attempt = 0; attempt < 8; ++attempt) {
          const double t = gauss(rng);
          const RMat candidate = p.values().real() + t * p.values().imag();
          const double rc = linalg::inverse_condition(candidate.cast<Complex>());
          if (rc > best) {
            best = rc;
            real_p = Matrix::from_real(candidate);
          }
          if (rc >= 1e-4) break;
        }
      }
      w = linalg::polar_unitary(real_p);
      break;
    }
    case IsometryKind::ComplexOrthogonal: {
      const Matrix gram = p * p.transpose();
      const Matrix root = linalg::principal_sqrt(gram);
      CMat solved = root.values().partialPivLu().solve(p.values());
      w = p.is_real() ? Matrix::from_real(solved.real()) : Matrix::from_complex(std::move(solved));
      break;
    }
  }
  const double residual = intertwining_residual(w, a, b);
  const double defect = isometry_defect(w, isometry_star(kind));
  if (residual > tol * scale || defect > tol) {
    throw Error(ErrorCode::VerificationFailed,
                "isometry check failed (residual " + std::to_string(residual) + ", defect " +
                    std::to_string(defect) + ")");
  }
  return w;
}

Matrix find_similarity_isometry(const MatrixSet& a, const MatrixSet& b, IsometryKind kind,
                                std::uint64_t rng_seed, int trials, double tol) {
  const SylvesterBasis basis = joint_sylvester_basis(a, b);
  if (basis.basis.empty()) throw Error(ErrorCode::NoIntertwiner, "intertwiner space is empty");
  std::string last_failure;
  for (int attempt = 0; attempt < std::max(trials, 1); ++attempt) {
    const std::uint64_t seed = derive_seed(rng_seed, static_cast<std::uint64_t>(attempt));
    const Matrix p = pick_invertible(basis, seed, trials);
    try {
      return similarity_to_isometry(p, a, b, kind, derive_seed(seed, 1), tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BranchCut && e.code() != ErrorCode::VerificationFailed &&
          e.code() != ErrorCode::Singular) {
        throw;
      }
      last_failure = e.what();
    }
  }
  throw Error(ErrorCode::VerificationFailed,
              "isometry construction failed after retries: " + last_failure);
}

}  // namespace simtrace
