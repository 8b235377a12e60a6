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
#include <string>
#include <variant>

#include "simtrace/closure.hpp"
#include "simtrace/fingerprint.hpp"
#include "simtrace/kinds.hpp"
#include "simtrace/rectangular.hpp"
#include "simtrace/words.hpp"

namespace simtrace {

struct EngineConfig {
  std::optional<std::size_t> max_word_len;  // default: min(bound, 6)
  double rtol = kDefaultRtol;
  double atol = kDefaultAtol;
  int trials = 8;
  std::uint64_t seed = 0;
  bool augment_closure = true;
  double cert_tol = kCertTol;
  std::uint64_t word_cap = kDefaultWordCap;

  /// Throws InvalidInput on negative tolerances or trials < 1.
  void validate() const;
};

inline constexpr std::size_t kDefaultWordCapLength = 6;

struct Equivalent {
  Certificate certificate;
};

struct Distinguished {
  Word word;
  AlphabetSpec alphabet;  // letters the word is spelled in
  Complex trace_a;
  Complex trace_b;
};

struct Inconclusive {
  std::string reason;
};

using Verdict = std::variant<Equivalent, Distinguished, Inconclusive>;

struct Decision {
  Kind kind = Kind::UnitarySimilar;
  Verdict verdict;
  std::size_t word_cap_used = 0;
  std::size_t bound = 0;
  EngineConfig config;
};

/// Three-valued decision: a verified certificate, a word whose traces
/// differ, or an explanation of why neither was reached. Deterministic in
/// (kind, a, b, config).
Decision decide(Kind kind, const MatrixSet& a, const MatrixSet& b, const EngineConfig& config = {});

struct VerificationReport {
  double isometry_defect_left = 0.0;
  double isometry_defect_right = 0.0;
  /// max_i of ||A_i U - U B_i||_F or ||U A_i - B_i V||_F.
  double intertwining_residual = 0.0;
  bool pass = false;
};

/// Recomputes every defect from scratch. Passes iff both isometry defects
/// are <= tol and each per-member residual is <= tol * max(||A_i||, ||B_i||).
VerificationReport verify_certificate(Kind kind, const Certificate& cert, const MatrixSet& a,
                                      const MatrixSet& b, double tol = kCertTol);

enum class InstanceTruth { Equivalent, PerturbedUnknown };

struct Instance {
  MatrixSet a;
  MatrixSet b;
  InstanceTruth truth = InstanceTruth::Equivalent;
};

/// Random pair related by the kind's isometries, with Gaussian noise of
/// size perturb_eps added to B_1 when perturb_eps > 0.
Instance generate_instance(Kind kind, Index rows, Index cols, std::size_t count,
                           std::uint64_t seed, double perturb_eps = 0.0);

/// Haar-distributed unitary (or real orthogonal when field is Real).
Matrix random_unitary(Index n, Field field, std::uint64_t seed);

/// exp(K) for a random complex antisymmetric K with entries of size ~1/sqrt(n).
Matrix random_complex_orthogonal(Index n, std::uint64_t seed);

}  // namespace simtrace
