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

#include <random>

#include <gtest/gtest.h>

#include "simtrace/closure.hpp"
#include "simtrace/engine.hpp"
#include "test_util.hpp"

namespace simtrace {
namespace {

using testing::real_matrix;
using testing::single;

const Matrix kJordan = real_matrix({{1, 1}, {0, 1}});

TEST(MatrixSet, ValidatesShapesAndNamesMembers) {
  EXPECT_THROW(MatrixSet(std::vector<Matrix>{}), Error);
  EXPECT_THROW(MatrixSet({Matrix::identity(2, Field::Real), Matrix::identity(3, Field::Real)}),
               Error);
  const MatrixSet s({kJordan, kJordan});
  EXPECT_EQ(s.labels(), (std::vector<std::string>{"A1", "A2"}));
}

TEST(StarClosed, HermitianSingleton) {
  CMat h(2, 2);
  h << 2.0, Complex(1, -1), Complex(1, 1), 3.0;
  EXPECT_TRUE(is_star_closed(single(Matrix::from_complex(h)), Star::ConjugateTranspose));
}

TEST(StarClosed, JordanBlockNotTransposeClosed) {
  EXPECT_FALSE(is_star_closed(single(kJordan), Star::Transpose));
  EXPECT_NEAR(span_residual({kJordan}, kJordan.transpose()), std::sqrt(5.0 / 3.0), 1e-12);
}

TEST(StarClosed, PairWithAdjointIsClosed) {
  std::mt19937_64 rng(4);
  const Matrix a = Matrix::from_complex(testing::random_complex(3, 3, rng));
  EXPECT_TRUE(is_star_closed(MatrixSet({a, a.adjoint()}), Star::ConjugateTranspose));
}

TEST(StarClosed, NonSquareThrowsInvalidShape) {
  try {
    is_star_closed(single(Matrix::zero(2, 3, Field::Real)), Star::Transpose);
    FAIL() << "expected InvalidShape";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidShape);
  }
}

TEST(StarAugment, AddsMissingAdjointOnce) {
  const MatrixSet once = star_augment(single(kJordan), Star::ConjugateTranspose);
  EXPECT_EQ(once.size(), 2u);
  EXPECT_TRUE(is_star_closed(once, Star::ConjugateTranspose));
  const MatrixSet twice = star_augment(once, Star::ConjugateTranspose);
  EXPECT_EQ(twice.size(), 2u);
  EXPECT_EQ(star_augment(single(Matrix::identity(2, Field::Real)), Star::ConjugateTranspose).size(),
            1u);
}

TEST(StarAugment, RandomSetsBecomeClosedAndStayFixed) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Matrix> ms;
    for (int i = 0; i < 1 + trial % 3; ++i) {
      ms.push_back(Matrix::from_complex(testing::random_complex(3, 3, rng)));
    }
    for (Star star : {Star::ConjugateTranspose, Star::Transpose}) {
      const MatrixSet aug = star_augment(MatrixSet(ms), star);
      EXPECT_TRUE(is_star_closed(aug, star));
      EXPECT_EQ(star_augment(aug, star).size(), aug.size());
    }
  }
}

TEST(StarClosed, InvariantUnderUnitaryConjugation) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix u = random_unitary(3, Field::Complex, 100 + trial);
    Matrix m = Matrix::from_complex(testing::random_complex(3, 3, rng));
    if (trial % 2 == 0) m = m + m.adjoint();
    const Matrix c = u.adjoint() * m * u;
    EXPECT_EQ(is_star_closed(single(m), Star::ConjugateTranspose),
              is_star_closed(single(c), Star::ConjugateTranspose));
  }
}

TEST(JordanClosed, Examples) {
  EXPECT_TRUE(is_jordan_closed(single(Matrix::identity(2, Field::Real))));
  EXPECT_FALSE(is_jordan_closed(single(real_matrix({{1, 0}, {0, -1}}))));
  EXPECT_TRUE(is_jordan_closed(MatrixSet({real_matrix({{1, 0}, {0, 0}}), real_matrix({{0, 0}, {0, 1}})})));
  EXPECT_THROW(is_jordan_closed(single(kJordan)), Error);
}

TEST(CharacteristicPolynomial, Diagonal) {
  const auto c = characteristic_polynomial(real_matrix({{1, 0}, {0, 2}}));
  ASSERT_EQ(c.size(), 3u);
  // x^2 - 3x + 2 in some consistent ordering
  std::vector<double> re{c[0].real(), c[1].real(), c[2].real()};
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], -3.0, 1e-12);
  EXPECT_NEAR(re[1], 1.0, 1e-12);
  EXPECT_NEAR(re[2], 2.0, 1e-12);
}

TEST(PencilProbe, Examples) {
  std::mt19937_64 rng(2);
  const MatrixSet r({Matrix::from_complex(testing::random_complex(3, 3, rng)),
                     Matrix::from_complex(testing::random_complex(3, 3, rng))});
  EXPECT_TRUE(pencil_charpoly_probe(r, r, 8, 1));
  EXPECT_TRUE(pencil_charpoly_probe(single(kJordan), single(Matrix::identity(2, Field::Real)), 8, 1));
  EXPECT_FALSE(pencil_charpoly_probe(single(real_matrix({{1, 0}, {0, 2}})),
                                     single(real_matrix({{1, 0}, {0, 3}})), 8, 1));
  EXPECT_THROW(pencil_charpoly_probe(r, single(kJordan), 4, 1), Error);
}

}  // namespace
}  // namespace simtrace
