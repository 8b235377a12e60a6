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

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace simtrace {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class ErrorCode {
  InvalidInput,
  InvalidShape,
  NotPsd,
  Singular,
  BranchCut,
  ResourceLimit,
  NoIntertwiner,
  SingularFamily,
  NotAnIntertwiner,
  VerificationFailed,
  NotRankOneEqual,
  GramMismatch,
  Degenerate,
  ParseError,
  SchemaError,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class Field { Real, Complex };

/// Which involution closes a set: A -> A* (conjugate transpose) or A -> A^t.
enum class Star { ConjugateTranspose, Transpose };

std::string_view to_string(Field field);

/// Dense rectangular matrix tagged with its scalar field.
///
/// Entries are always stored as complex doubles. A Real-field matrix has
/// every imaginary part exactly zero; all entries are finite.
class Matrix {
 public:
  Matrix() = default;

  /// Throws InvalidInput on empty shape, non-finite entries, or a Real tag
  /// on data with a nonzero imaginary part.
  Matrix(CMat values, Field field);

  static Matrix from_real(const RMat& values);
  static Matrix from_complex(CMat values);
  static Matrix identity(Index n, Field field);
  static Matrix zero(Index rows, Index cols, Field field);

  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }
  bool is_square() const noexcept { return rows() == cols(); }
  Field field() const noexcept { return field_; }
  bool is_real() const noexcept { return field_ == Field::Real; }

  const CMat& values() const noexcept { return values_; }
  Complex operator()(Index r, Index c) const { return values_(r, c); }
  RMat real_values() const { return values_.real(); }

  double norm() const { return values_.norm(); }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix star(Star s) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(Complex s, const Matrix& a);

  /// Exact (bitwise) equality of shape, field and entries.
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  CMat values_;
  Field field_ = Field::Complex;
};

Field join(Field a, Field b);

/// Apply the involution to a raw complex matrix.
CMat apply_star(const CMat& m, Star s);

}  // namespace simtrace
