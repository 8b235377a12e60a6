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
#include <span>
#include <vector>

#include "simtrace/closure.hpp"
#include "simtrace/matrix.hpp"
#include "simtrace/words.hpp"

namespace simtrace {

struct FingerprintEntry {
  Word word;
  Complex trace;
  /// Product of letter Frobenius norms; bounds |trace| up to a factor n.
  double scale = 0.0;
};

/// Traces of every canonical word up to max_len, in (length, lex) order.
struct Fingerprint {
  AlphabetSpec alphabet;
  std::size_t max_len = 0;
  std::vector<FingerprintEntry> entries;
};

struct TraceMismatch {
  Word word;
  Complex trace_a;
  Complex trace_b;
  double scale = 0.0;
};

/// Empty optional means Match.
using FingerprintComparison = std::optional<TraceMismatch>;

inline constexpr double kDefaultRtol = 1e-8;
inline constexpr double kDefaultAtol = 1e-10;

/// Trace of the ordered product, accumulated left to right.
Complex word_trace(std::span<const Matrix> letters, const Word& w);

/// Product of the Frobenius norms of the word's letters.
double word_scale(std::span<const Matrix> letters, const Word& w);

Fingerprint make_fingerprint(const MatrixSet& s, std::size_t max_len,
                             std::uint64_t cap = kDefaultWordCap);

/// First word (in enumeration order) with
/// |trA - trB| > atol + rtol * max(scaleA, scaleB).
FingerprintComparison compare_fingerprints(const Fingerprint& fa, const Fingerprint& fb,
                                           double rtol = kDefaultRtol,
                                           double atol = kDefaultAtol);

/// Same verdict as comparing the two materialized fingerprints, but walks
/// both alphabets together and stops exploring past the first mismatch.
FingerprintComparison compare_sets(const MatrixSet& a, const MatrixSet& b, std::size_t max_len,
                                   double rtol = kDefaultRtol, double atol = kDefaultAtol,
                                   std::uint64_t cap = kDefaultWordCap);

/// The k^2 letters A_i * star(A_j), ordered by (i, j).
MatrixSet gram_alphabet(const MatrixSet& s, Star star);

}  // namespace simtrace
