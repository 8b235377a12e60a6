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
#include <functional>
#include <string>
#include <vector>

namespace simtrace {

using Letter = std::uint32_t;

/// A nonempty product of alphabet letters, read left to right.
class Word {
 public:
  Word() = default;
  /// Throws InvalidInput when `letters` is empty.
  explicit Word(std::vector<Letter> letters);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  /// Throws InvalidInput if any letter is >= alphabet_size.
  void check_alphabet(std::size_t alphabet_size) const;

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

struct AlphabetSpec {
  std::size_t size = 0;
  std::vector<std::string> labels;

  static AlphabetSpec numbered(std::size_t size, const std::string& prefix = "A");
  /// Labels joined with a middle dot, e.g. "A1·A2*·A1".
  std::string render(const Word& w) const;
};

/// Lexicographically least cyclic rotation (Booth's algorithm).
Word canonical_rotation(const Word& w);

inline constexpr std::uint64_t kDefaultWordCap = 10'000'000;

/// Number of necklaces of length `length` over `alphabet_size` letters,
/// saturating at UINT64_MAX.
std::uint64_t necklace_count(std::size_t alphabet_size, std::size_t length);

/// One canonical representative per rotation class, for every length in
/// 1..max_len, ordered by (length, lexicographic). Throws ResourceLimit when
/// the total count exceeds `cap`.
std::vector<Word> enumerate_words(std::size_t alphabet_size, std::size_t max_len,
                                  std::uint64_t cap = kDefaultWordCap);

/// Depth-first walk over prenecklaces in lexicographic order. The visitor is
/// called for every prefix; `is_necklace` marks the canonical ones. Returning
/// false from the visitor prunes the subtree. Letters of the first position
/// are restricted to [first_lo, first_hi).
struct PrenecklaceVisit {
  const std::vector<Letter>& prefix;
  bool is_necklace;
};
void walk_prenecklaces(std::size_t alphabet_size, std::size_t max_len,
                       const std::function<bool(const PrenecklaceVisit&)>& visit);

/// Word-length bound ceil(n*sqrt(2n^2/(4(n-1)) + 1/4) + (n-4)/2); 1 for n = 1.
std::size_t word_length_bound(std::size_t n);

}  // namespace simtrace
