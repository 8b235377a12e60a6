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

#include "simtrace/engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

#include <Eigen/QR>
#include <unsupported/Eigen/MatrixFunctions>

#include "simtrace/linalg.hpp"

namespace simtrace {

void EngineConfig::validate() const {
  if (rtol < 0.0 || atol < 0.0 || cert_tol < 0.0) {
    throw Error(ErrorCode::InvalidInput, "tolerances must be nonnegative");
  }
  if (trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be at least 1");
  if (max_word_len && *max_word_len == 0) {
    throw Error(ErrorCode::InvalidInput, "max word length must be positive");
  }
}

namespace {

void check_inputs(Kind kind, const MatrixSet& a, const MatrixSet& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidInput, "set cardinalities differ");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::InvalidInput, "set dimensions differ");
  }
  if (is_similarity(kind) && !a.is_square()) {
    throw Error(ErrorCode::InvalidInput, "similarity kinds need square matrices");
  }
  if (requires_real(kind) && (a.field() != Field::Real || b.field() != Field::Real)) {
    throw Error(ErrorCode::InvalidInput, "orthogonal kinds need real matrices");
  }
}

Field certificate_field(Kind kind, const MatrixSet& a, const MatrixSet& b) {
  return requires_real(kind) ? Field::Real : join(a.field(), b.field());
}

std::string cap_note(std::size_t used, std::size_t bound) {
  std::string s = "words checked up to length " + std::to_string(used) + " (length bound " +
                  std::to_string(bound) + ")";
  if (used < bound) s += "; the cap is below the bound, so a longer distinguishing word may exist";
  return s;
}

double member_scale(const Matrix& a, const Matrix& b) {
  return std::max({a.norm(), b.norm(), linalg::kNormFloor});
}

}  // namespace

Decision decide(Kind kind, const MatrixSet& a, const MatrixSet& b, const EngineConfig& config) {
  config.validate();
  check_inputs(kind, a, b);
  Decision d;
  d.kind = kind;
  d.config = config;
  d.bound = word_length_bound(static_cast<std::size_t>(a.rows()));
  d.word_cap_used = config.max_word_len.value_or(std::min(d.bound, kDefaultWordCapLength));

  if (a.all_zero() && b.all_zero()) {
    const Field f = certificate_field(kind, a, b);
    Certificate cert{kind, Matrix::identity(a.rows(), f), std::nullopt, 0.0};
    if (!is_similarity(kind)) cert.right = Matrix::identity(a.cols(), f);
    d.verdict = Equivalent{std::move(cert)};
    return d;
  }

  const Star star = kind_star(kind);
  MatrixSet la, lb;
  if (is_similarity(kind)) {
    if (config.augment_closure) {
      std::tie(la, lb) = star_augment_pair(a, b, star);
    } else {
      if (!is_star_closed(a, star) || !is_star_closed(b, star)) {
        throw Error(ErrorCode::InvalidInput,
                    "strict closure mode: input sets are not closed under the kind's star");
      }
      la = a;
      lb = b;
    }
  } else {
    la = gram_alphabet(a, star);
    lb = gram_alphabet(b, star);
  }

  if (auto mismatch =
          compare_sets(la, lb, d.word_cap_used, config.rtol, config.atol, config.word_cap)) {
    d.verdict = Distinguished{mismatch->word, AlphabetSpec{la.size(), la.labels()},
                              mismatch->trace_a, mismatch->trace_b};
    return d;
  }

  try {
    Certificate cert;
    if (is_similarity(kind)) {
      const Matrix u = find_similarity_isometry(la, lb, isometry_kind(kind), config.seed,
                                                config.trials, config.cert_tol);
      cert = Certificate{kind, u, std::nullopt, intertwining_residual(u, a, b)};
    } else {
      cert = equivalence_certificate(a, b, kind,
                                     EquivalenceConfig{config.seed, config.trials, config.cert_tol});
    }
    const VerificationReport report = verify_certificate(kind, cert, a, b, config.cert_tol);
    if (report.pass) {
      d.verdict = Equivalent{std::move(cert)};
    } else {
      d.verdict = Inconclusive{"traces agree but the constructed certificate failed verification; " +
                               cap_note(d.word_cap_used, d.bound)};
    }
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::NoIntertwiner:
      case ErrorCode::SingularFamily:
      case ErrorCode::VerificationFailed:
      case ErrorCode::BranchCut:
      case ErrorCode::Singular:
      case ErrorCode::Degenerate:
      case ErrorCode::GramMismatch:
        d.verdict = Inconclusive{std::string("traces agree but no certificate was built (") +
                                 e.what() + "); " + cap_note(d.word_cap_used, d.bound) +
                                 "; the bound is only established for pairs of matrices"};
        break;
      default:
        throw;
    }
  }
  return d;
}

VerificationReport verify_certificate(Kind kind, const Certificate& cert, const MatrixSet& a,
                                      const MatrixSet& b, double tol) {
  check_inputs(kind, a, b);
  const Star star = kind_star(kind);
  const Index m = a.rows();
  const Index n = a.cols();
  VerificationReport r;
  bool shape_ok = cert.left.rows() == m && cert.left.cols() == m;
  if (!is_similarity(kind)) {
    shape_ok = shape_ok && cert.right && cert.right->rows() == n && cert.right->cols() == n;
  }
  if (!shape_ok) throw Error(ErrorCode::InvalidInput, "certificate shape does not match the kind");

  const CMat& u = cert.left.values();
  r.isometry_defect_left = isometry_defect(cert.left, star);
  if (cert.right) r.isometry_defect_right = isometry_defect(*cert.right, star);
  bool residuals_ok = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const CMat& ai = a[i].values();
    const CMat& bi = b[i].values();
    const double res = is_similarity(kind) ? (ai * u - u * bi).norm()
                                           : (u * ai - bi * cert.right->values()).norm();
    r.intertwining_residual = std::max(r.intertwining_residual, res);
    if (!(res <= tol * member_scale(a[i], b[i]))) residuals_ok = false;
  }
  bool field_ok = true;
  if (requires_real(kind)) {
    field_ok = cert.left.is_real() && (!cert.right || cert.right->is_real());
  }
  r.pass = residuals_ok && field_ok && r.isometry_defect_left <= tol &&
           r.isometry_defect_right <= tol;
  return r;
}

namespace {

CMat gaussian(Index rows, Index cols, Field field, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      if (field == Field::Real) {
        out(i, j) = Complex(g(rng), 0.0);
      } else {
        const double re = g(rng);
        const double im = g(rng);
        out(i, j) = Complex(re, im) / std::sqrt(2.0);
      }
    }
  }
  return out;
}

Matrix tagged(const CMat& v, Field f) {
  return f == Field::Real ? Matrix::from_real(v.real()) : Matrix::from_complex(v);
}

Matrix random_isometry(IsometryKind kind, Index n, std::uint64_t seed) {
  switch (kind) {
    case IsometryKind::Unitary:
      return random_unitary(n, Field::Complex, seed);
    case IsometryKind::RealOrthogonal:
      return random_unitary(n, Field::Real, seed);
    case IsometryKind::ComplexOrthogonal:
      return random_complex_orthogonal(n, seed);
  }
  return Matrix::identity(n, Field::Complex);
}

}  // namespace

Matrix random_unitary(Index n, Field field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const CMat g = gaussian(n, n, field, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR();
  // fix column phases so the distribution is Haar
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return tagged(q, field);
}

Matrix random_complex_orthogonal(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const CMat g = gaussian(n, n, Field::Complex, rng);
  const CMat k = (g - g.transpose()) / (2.0 * std::sqrt(static_cast<double>(n)));
  return Matrix::from_complex(k.exp());
}

Instance generate_instance(Kind kind, Index rows, Index cols, std::size_t count,
                           std::uint64_t seed, double perturb_eps) {
  if (rows < 1 || cols < 1 || count < 1) {
    throw Error(ErrorCode::InvalidInput, "instance dimensions and count must be positive");
  }
  if (is_similarity(kind) && rows != cols) {
    throw Error(ErrorCode::InvalidInput, "similarity instances need rows == cols");
  }
  if (perturb_eps < 0.0) throw Error(ErrorCode::InvalidInput, "perturbation must be nonnegative");
  const Field field = requires_real(kind) ? Field::Real : Field::Complex;
  const IsometryKind iso = isometry_kind(kind);
  const Star star = kind_star(kind);
  std::mt19937_64 rng(derive_seed(seed, 0));
  const Matrix u = random_isometry(iso, rows, derive_seed(seed, 1));
  const Matrix v = is_similarity(kind) ? u : random_isometry(iso, cols, derive_seed(seed, 2));
  const CMat u_inv = apply_star(u.values(), star);

  std::vector<Matrix> as, bs;
  std::vector<std::string> la, lb;
  for (std::size_t i = 0; i < count; ++i) {
    const CMat ai = gaussian(rows, cols, field, rng);
    // similarity: B = U^{-1} A U; equivalence: B = U A V^{-1}
    const CMat bi = is_similarity(kind) ? CMat(u_inv * ai * u.values())
                                        : CMat(u.values() * ai * apply_star(v.values(), star));
    as.push_back(tagged(ai, field));
    bs.push_back(tagged(bi, field));
    la.push_back("A" + std::to_string(i + 1));
    lb.push_back("B" + std::to_string(i + 1));
  }
  Instance out{MatrixSet(std::move(as), std::move(la)), MatrixSet(std::move(bs), std::move(lb)),
               InstanceTruth::Equivalent};
  if (perturb_eps > 0.0) {
    std::vector<Matrix> bs2 = out.b.matrices();
    const CMat noise = gaussian(rows, cols, field, rng);
    bs2[0] = tagged(bs2[0].values() + perturb_eps * noise, field);
    out.b = MatrixSet(std::move(bs2), out.b.labels());
    out.truth = InstanceTruth::PerturbedUnknown;
  }
  return out;
}

}  // namespace simtrace
