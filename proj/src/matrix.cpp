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

#include "simtrace/matrix.hpp"

#include <cmath>

namespace simtrace {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::BranchCut: return "BranchCut";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::NoIntertwiner: return "NoIntertwiner";
    case ErrorCode::SingularFamily: return "SingularFamily";
    case ErrorCode::NotAnIntertwiner: return "NotAnIntertwiner";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::NotRankOneEqual: return "NotRankOneEqual";
    case ErrorCode::GramMismatch: return "GramMismatch";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

std::string_view to_string(Field field) {
  return field == Field::Real ? "real" : "complex";
}

Matrix::Matrix(CMat values, Field field) : values_(std::move(values)), field_(field) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw Error(ErrorCode::InvalidInput, "matrix must have positive dimensions");
  }
  for (Index j = 0; j < values_.cols(); ++j) {
    for (Index i = 0; i < values_.rows(); ++i) {
      const Complex z = values_(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorCode::InvalidInput, "matrix entry is not finite");
      }
      if (field_ == Field::Real && z.imag() != 0.0) {
        throw Error(ErrorCode::InvalidInput, "real-field matrix has a nonzero imaginary part");
      }
    }
  }
}

Matrix Matrix::from_real(const RMat& values) { return Matrix(values.cast<Complex>(), Field::Real); }

Matrix Matrix::from_complex(CMat values) { return Matrix(std::move(values), Field::Complex); }

Matrix Matrix::identity(Index n, Field field) { return Matrix(CMat::Identity(n, n), field); }

Matrix Matrix::zero(Index rows, Index cols, Field field) {
  return Matrix(CMat::Zero(rows, cols), field);
}

Matrix Matrix::adjoint() const { return Matrix(values_.adjoint(), field_); }

Matrix Matrix::transpose() const { return Matrix(values_.transpose(), field_); }

Matrix Matrix::star(Star s) const { return s == Star::Transpose ? transpose() : adjoint(); }

Field join(Field a, Field b) {
  return (a == Field::Real && b == Field::Real) ? Field::Real : Field::Complex;
}

CMat apply_star(const CMat& m, Star s) {
  return s == Star::Transpose ? CMat(m.transpose()) : CMat(m.adjoint());
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidShape, "product shape mismatch");
  const Field f = join(a.field_, b.field_);
  if (f == Field::Real) {
    // real arithmetic keeps imaginary parts exactly zero
    return Matrix::from_real(a.real_values() * b.real_values());
  }
  return Matrix(a.values_ * b.values_, f);
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::InvalidShape, "sum shape mismatch");
  }
  return Matrix(a.values_ + b.values_, join(a.field_, b.field_));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::InvalidShape, "difference shape mismatch");
  }
  return Matrix(a.values_ - b.values_, join(a.field_, b.field_));
}

Matrix operator*(Complex s, const Matrix& a) {
  const Field f = (s.imag() == 0.0) ? a.field_ : Field::Complex;
  if (f == Field::Real) return Matrix::from_real(s.real() * a.real_values());
  return Matrix(s * a.values_, f);
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows() == b.rows() && a.cols() == b.cols() &&
         a.values_ == b.values_;
}

}  // namespace simtrace
