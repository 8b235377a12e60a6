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

#include "simtrace/fingerprint.hpp"

#include <algorithm>
#include <cmath>

namespace simtrace {

namespace {

// tr(P * L) without forming the product.
template <class Mat>
Complex trace_of_product(const Mat& p, const Mat& l) {
  typename Mat::Scalar acc(0);
  for (Index j = 0; j < p.cols(); ++j) {
    for (Index i = 0; i < p.rows(); ++i) acc += p(i, j) * l(j, i);
  }
  return Complex(acc);
}

template <class Mat>
Complex trace_of(const Mat& m) {
  typename Mat::Scalar acc(0);
  for (Index i = 0; i < m.rows(); ++i) acc += m(i, i);
  return Complex(acc);
}

// Running products along the current DFS prefix; depth d lives at slot d-1.
template <class Mat>
class ProductStack {
 public:
  ProductStack(std::vector<Mat> letters, std::size_t max_len)
      : letters_(std::move(letters)), stack_(max_len) {}

  Complex trace(const std::vector<Letter>& prefix) const {
    const std::size_t d = prefix.size();
    const Mat& last = letters_[prefix.back()];
    return d == 1 ? trace_of(last) : trace_of_product(stack_[d - 2], last);
  }

  void push(const std::vector<Letter>& prefix) {
    const std::size_t d = prefix.size();
    const Mat& last = letters_[prefix.back()];
    if (d == 1) {
      stack_[0] = last;
    } else {
      stack_[d - 1].noalias() = stack_[d - 2] * last;
    }
  }

 private:
  std::vector<Mat> letters_;
  std::vector<Mat> stack_;
};

std::vector<RMat> real_letters(std::span<const Matrix> s) {
  std::vector<RMat> out;
  for (const auto& m : s) out.push_back(m.real_values());
  return out;
}

std::vector<CMat> complex_letters(std::span<const Matrix> s) {
  std::vector<CMat> out;
  for (const auto& m : s) out.push_back(m.values());
  return out;
}

bool all_real(std::span<const Matrix> s) {
  return std::all_of(s.begin(), s.end(), [](const Matrix& m) { return m.is_real(); });
}

void check_letters(std::span<const Matrix> letters) {
  if (letters.empty()) throw Error(ErrorCode::InvalidInput, "alphabet is empty");
  const Index n = letters.front().rows();
  for (const auto& m : letters) {
    if (m.rows() != n || m.cols() != n) {
      throw Error(ErrorCode::InvalidShape, "word letters must be square of equal size");
    }
  }
}

std::vector<double> letter_norms(std::span<const Matrix> letters) {
  std::vector<double> out;
  for (const auto& m : letters) out.push_back(m.norm());
  return out;
}

double scale_of(const std::vector<double>& norms, const std::vector<Letter>& w) {
  double s = 1.0;
  for (Letter l : w) s *= norms[l];
  return s;
}

void check_cap(std::size_t alphabet_size, std::size_t max_len, std::uint64_t cap) {
  if (max_len == 0) throw Error(ErrorCode::InvalidInput, "max word length must be positive");
  std::uint64_t total = 0;
  for (std::size_t l = 1; l <= max_len; ++l) {
    const std::uint64_t c = necklace_count(alphabet_size, l);
    if (c > cap || total > cap - c) {
      throw Error(ErrorCode::ResourceLimit,
                  "word enumeration exceeds the configured cap of " + std::to_string(cap));
    }
    total += c;
  }
}

template <class Mat>
Complex word_trace_impl(std::vector<Mat> letters, const Word& w) {
  ProductStack<Mat> stack(std::move(letters), w.size());
  std::vector<Letter> prefix;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    prefix.push_back(w[i]);
    stack.push(prefix);
  }
  prefix.push_back(w[w.size() - 1]);
  return stack.trace(prefix);
}

template <class Mat>
std::vector<std::vector<FingerprintEntry>> fingerprint_impl(std::vector<Mat> letters,
                                                            const std::vector<double>& norms,
                                                            std::size_t max_len) {
  const std::size_t s = letters.size();
  ProductStack<Mat> stack(std::move(letters), max_len);
  std::vector<std::vector<FingerprintEntry>> by_len(max_len);
  walk_prenecklaces(s, max_len, [&](const PrenecklaceVisit& v) {
    if (v.is_necklace) {
      by_len[v.prefix.size() - 1].push_back(
          FingerprintEntry{Word(v.prefix), stack.trace(v.prefix), scale_of(norms, v.prefix)});
    }
    if (v.prefix.size() < max_len) stack.push(v.prefix);
    return true;
  });
  return by_len;
}

bool differs(Complex ta, Complex tb, double scale_a, double scale_b, double rtol, double atol) {
  return std::abs(ta - tb) > atol + rtol * std::max(scale_a, scale_b);
}

template <class Mat>
FingerprintComparison compare_impl(std::vector<Mat> la, std::vector<Mat> lb,
                                   const std::vector<double>& na, const std::vector<double>& nb,
                                   std::size_t max_len, double rtol, double atol) {
  const std::size_t s = la.size();
  ProductStack<Mat> sa(std::move(la), max_len);
  ProductStack<Mat> sb(std::move(lb), max_len);
  FingerprintComparison best;
  walk_prenecklaces(s, max_len, [&](const PrenecklaceVisit& v) {
    const std::size_t d = v.prefix.size();
    // Preorder visits each length in lex order, so the first mismatch found
    // at a given length is the earliest one; nothing longer can win.
    if (best && d >= best->word.size()) return false;
    if (v.is_necklace) {
      const Complex ta = sa.trace(v.prefix);
      const Complex tb = sb.trace(v.prefix);
      const double ca = scale_of(na, v.prefix);
      const double cb = scale_of(nb, v.prefix);
      if (differs(ta, tb, ca, cb, rtol, atol)) {
        best = TraceMismatch{Word(v.prefix), ta, tb, std::max(ca, cb)};
        return false;
      }
    }
    if (d < max_len) {
      sa.push(v.prefix);
      sb.push(v.prefix);
    }
    return true;
  });
  return best;
}

}  // namespace

Complex word_trace(std::span<const Matrix> letters, const Word& w) {
  check_letters(letters);
  w.check_alphabet(letters.size());
  if (all_real(letters)) return word_trace_impl(real_letters(letters), w);
  return word_trace_impl(complex_letters(letters), w);
}

double word_scale(std::span<const Matrix> letters, const Word& w) {
  w.check_alphabet(letters.size());
  return scale_of(letter_norms(letters), w.letters());
}

Fingerprint make_fingerprint(const MatrixSet& s, std::size_t max_len, std::uint64_t cap) {
  if (!s.is_square()) throw Error(ErrorCode::InvalidShape, "fingerprint needs square matrices");
  check_cap(s.size(), max_len, cap);
  const std::vector<double> norms = letter_norms(s.matrices());
  auto by_len = s.field() == Field::Real
                    ? fingerprint_impl(real_letters(s.matrices()), norms, max_len)
                    : fingerprint_impl(complex_letters(s.matrices()), norms, max_len);
  Fingerprint fp;
  fp.alphabet = AlphabetSpec{s.size(), s.labels()};
  fp.max_len = max_len;
  for (auto& bucket : by_len) {
    for (auto& e : bucket) fp.entries.push_back(std::move(e));
  }
  return fp;
}

FingerprintComparison compare_fingerprints(const Fingerprint& fa, const Fingerprint& fb,
                                           double rtol, double atol) {
  if (fa.alphabet.size != fb.alphabet.size || fa.max_len != fb.max_len ||
      fa.entries.size() != fb.entries.size()) {
    throw Error(ErrorCode::InvalidInput, "fingerprints cover different alphabets or lengths");
  }
  for (std::size_t i = 0; i < fa.entries.size(); ++i) {
    const auto& ea = fa.entries[i];
    const auto& eb = fb.entries[i];
    if (ea.word != eb.word) throw Error(ErrorCode::InvalidInput, "fingerprint word order differs");
    if (differs(ea.trace, eb.trace, ea.scale, eb.scale, rtol, atol)) {
      return TraceMismatch{ea.word, ea.trace, eb.trace, std::max(ea.scale, eb.scale)};
    }
  }
  return std::nullopt;
}

FingerprintComparison compare_sets(const MatrixSet& a, const MatrixSet& b, std::size_t max_len,
                                   double rtol, double atol, std::uint64_t cap) {
  if (!a.is_square() || !b.is_square()) {
    throw Error(ErrorCode::InvalidShape, "fingerprint needs square matrices");
  }
  if (a.size() != b.size() || a.rows() != b.rows()) {
    throw Error(ErrorCode::InvalidInput, "alphabets differ in size or dimension");
  }
  check_cap(a.size(), max_len, cap);
  const auto na = letter_norms(a.matrices());
  const auto nb = letter_norms(b.matrices());
  if (a.field() == Field::Real && b.field() == Field::Real) {
    return compare_impl(real_letters(a.matrices()), real_letters(b.matrices()), na, nb, max_len,
                        rtol, atol);
  }
  return compare_impl(complex_letters(a.matrices()), complex_letters(b.matrices()), na, nb,
                      max_len, rtol, atol);
}

MatrixSet gram_alphabet(const MatrixSet& s, Star star) {
  std::vector<Matrix> letters;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      letters.push_back(s[i] * s[j].star(star));
      labels.push_back(s.labels()[i] + "·" + s.labels()[j] + star_suffix(star));
    }
  }
  return MatrixSet(std::move(letters), std::move(labels));
}

}  // namespace simtrace
