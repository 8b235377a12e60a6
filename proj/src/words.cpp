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

#include "simtrace/words.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "simtrace/matrix.hpp"

namespace simtrace {

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw Error(ErrorCode::InvalidInput, "word must be nonempty");
}

void Word::check_alphabet(std::size_t alphabet_size) const {
  for (Letter l : letters_) {
    if (l >= alphabet_size) {
      throw Error(ErrorCode::InvalidInput, "word letter " + std::to_string(l) +
                                               " outside alphabet of size " +
                                               std::to_string(alphabet_size));
    }
  }
}

AlphabetSpec AlphabetSpec::numbered(std::size_t size, const std::string& prefix) {
  AlphabetSpec a;
  a.size = size;
  for (std::size_t i = 0; i < size; ++i) a.labels.push_back(prefix + std::to_string(i + 1));
  return a;
}

std::string AlphabetSpec::render(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += "·";
    const Letter l = w[i];
    out += l < labels.size() ? labels[l] : ("#" + std::to_string(l));
  }
  return out;
}

Word canonical_rotation(const Word& w) {
  const auto& s = w.letters();
  const std::size_t n = s.size();
  // Booth's least rotation over the doubled string.
  std::vector<std::ptrdiff_t> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const Letter sj = s[j % n];
    std::ptrdiff_t i = f[j - k - 1];
    while (i != -1 && sj != s[(k + i + 1) % n]) {
      if (sj < s[(k + i + 1) % n]) k = j - i - 1;
      i = f[i];
    }
    if (sj != s[(k + i + 1) % n]) {  // i == -1
      if (sj < s[k % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  std::vector<Letter> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = s[(k + i) % n];
  return Word(std::move(out));
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

std::uint64_t necklace_count(std::size_t alphabet_size, std::size_t length) {
  if (length == 0) return 0;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  for (std::size_t d = 1; d <= length; ++d) {
    if (length % d != 0) continue;
    const std::uint64_t term = sat_mul(euler_phi(d), sat_pow(alphabet_size, length / d));
    if (term == kMax || total > kMax - term) return kMax;
    total += term;
  }
  return total / length;
}

void walk_prenecklaces(std::size_t alphabet_size, std::size_t max_len,
                       const std::function<bool(const PrenecklaceVisit&)>& visit) {
  if (alphabet_size == 0 || max_len == 0) return;
  std::vector<Letter> prefix;
  prefix.reserve(max_len);
  // FKM extension rule: a_1..a_t c stays a prenecklace iff c >= a_{t+1-p},
  // where p is the period of a_1..a_t; it is a necklace iff p divides t+1.
  std::function<void(std::size_t)> rec = [&](std::size_t period) {
    const std::size_t t = prefix.size();
    const Letter lo = t == 0 ? 0 : prefix[t - period];
    for (Letter c = lo; c < alphabet_size; ++c) {
      const std::size_t p = (t == 0 || c != prefix[t - period]) ? t + 1 : period;
      prefix.push_back(c);
      const bool necklace = (t + 1) % p == 0;
      const bool descend = visit(PrenecklaceVisit{prefix, necklace});
      if (descend && t + 1 < max_len) rec(p);
      prefix.pop_back();
    }
  };
  rec(1);
}

std::vector<Word> enumerate_words(std::size_t alphabet_size, std::size_t max_len,
                                  std::uint64_t cap) {
  if (alphabet_size == 0 || max_len == 0) {
    throw Error(ErrorCode::InvalidInput, "alphabet size and max length must be positive");
  }
  std::uint64_t total = 0;
  for (std::size_t l = 1; l <= max_len; ++l) {
    const std::uint64_t c = necklace_count(alphabet_size, l);
    if (c > cap || total > cap - c) {
      throw Error(ErrorCode::ResourceLimit, "word enumeration exceeds the configured cap of " +
                                                std::to_string(cap));
    }
    total += c;
  }
  std::vector<std::vector<Word>> by_len(max_len);
  walk_prenecklaces(alphabet_size, max_len, [&](const PrenecklaceVisit& v) {
    if (v.is_necklace) by_len[v.prefix.size() - 1].emplace_back(v.prefix);
    return true;
  });
  std::vector<Word> out;
  out.reserve(total);
  for (auto& bucket : by_len) {
    for (auto& w : bucket) out.push_back(std::move(w));
  }
  return out;
}

std::size_t word_length_bound(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "matrix size must be positive");
  if (n == 1) return 1;
  const double nd = static_cast<double>(n);
  const double value = nd * std::sqrt(2.0 * nd * nd / (4.0 * (nd - 1.0)) + 0.25) + (nd - 4.0) / 2.0;
  // guard against rounding just above an exact integer
  return static_cast<std::size_t>(std::ceil(value - 1e-9));
}

}  // namespace simtrace
