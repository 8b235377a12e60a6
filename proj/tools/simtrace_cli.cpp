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

// Command-line front end. Exit codes: 0 equivalent (or success), 1
// distinguished (or failed verification), 2 inconclusive, 3 usage/input error.

#include <complex>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "simtrace/engine.hpp"
#include "simtrace/io.hpp"

namespace {

using namespace simtrace;

constexpr int kExitEquivalent = 0;
constexpr int kExitDistinguished = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

const std::vector<std::string> kKindNames = {
    "unitary-similar", "orthogonal-similar", "complex-orthogonal-similar",
    "unitary-equiv",   "orthogonal-equiv",   "complex-orthogonal-equiv"};

std::string fmt_complex(Complex z) {
  std::ostringstream out;
  out << std::setprecision(12) << z.real();
  if (z.imag() != 0.0) out << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return out.str();
}

int run_decide(const std::string& kind_name, const std::string& left, const std::string& right,
               const EngineConfig& config, bool json, const std::string& cert_out) {
  const Kind kind = *parse_kind(kind_name);
  const MatrixSet a = io::load_matrix_set(left);
  const MatrixSet b = io::load_matrix_set(right);
  const Decision d = decide(kind, a, b, config);
  if (json) {
    std::cout << io::decision_to_json(d).dump(2) << "\n";
  }
  int code = kExitInconclusive;
  if (const auto* eq = std::get_if<Equivalent>(&d.verdict)) {
    code = kExitEquivalent;
    if (!cert_out.empty()) {
      io::write_file(cert_out, io::certificate_to_json(eq->certificate).dump(2) + "\n");
    }
    if (!json) {
      std::cout << "EQUIVALENT (" << kind_name << ")\n"
                << "  certificate residual: " << eq->certificate.residual << "\n";
    }
  } else if (const auto* dist = std::get_if<Distinguished>(&d.verdict)) {
    code = kExitDistinguished;
    if (!json) {
      std::cout << "DISTINGUISHED (" << kind_name << ")\n"
                << "  word: " << dist->alphabet.render(dist->word) << "\n"
                << "  trace left:  " << fmt_complex(dist->trace_a) << "\n"
                << "  trace right: " << fmt_complex(dist->trace_b) << "\n";
    }
  } else if (!json) {
    std::cout << "INCONCLUSIVE (" << kind_name << ")\n"
              << "  " << std::get<Inconclusive>(d.verdict).reason << "\n";
  }
  if (!json) {
    std::cout << "  words checked up to length " << d.word_cap_used << " (bound " << d.bound
              << ")\n";
  }
  return code;
}

int run_fingerprint(const std::string& input, const std::string& kind, std::size_t max_len,
                    bool json) {
  const MatrixSet s = io::load_matrix_set(input);
  MatrixSet letters = s;
  if (kind == "gram-star") letters = gram_alphabet(s, Star::ConjugateTranspose);
  if (kind == "gram-transpose") letters = gram_alphabet(s, Star::Transpose);
  const Fingerprint fp = make_fingerprint(letters, max_len);
  if (json) {
    std::cout << io::fingerprint_to_json(fp).dump(2) << "\n";
    return 0;
  }
  for (const auto& e : fp.entries) {
    std::cout << std::left << std::setw(32) << fp.alphabet.render(e.word) << " "
              << fmt_complex(e.trace) << "\n";
  }
  return 0;
}

int run_verify(const std::string& kind_name, const std::string& cert_path,
               const std::string& left, const std::string& right, bool json) {
  const Kind kind = *parse_kind(kind_name);
  const Certificate cert = io::load_certificate(cert_path);
  const VerificationReport r =
      verify_certificate(kind, cert, io::load_matrix_set(left), io::load_matrix_set(right));
  if (json) {
    std::cout << io::report_to_json(r).dump(2) << "\n";
  } else {
    std::cout << (r.pass ? "PASS" : "FAIL") << "\n"
              << "  isometry defect (left):  " << r.isometry_defect_left << "\n"
              << "  isometry defect (right): " << r.isometry_defect_right << "\n"
              << "  intertwining residual:   " << r.intertwining_residual << "\n";
  }
  return r.pass ? kExitEquivalent : kExitDistinguished;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide simultaneous unitary / orthogonal similarity and equivalence of matrix sets"};
  app.require_subcommand(1);

  std::string kind, left, right, cert_out, cert, input, fp_kind, out_left, out_right;
  EngineConfig config;
  std::size_t max_len = 0;
  bool json = false, strict = false;
  long long rows = 0, cols = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  double perturb = 0.0;

  auto* dec = app.add_subcommand("decide", "Decide equivalence of two matrix sets");
  dec->add_option("--kind", kind)->required()->check(CLI::IsMember(kKindNames));
  dec->add_option("--left", left)->required();
  dec->add_option("--right", right)->required();
  auto* dec_len = dec->add_option("--max-word-len", max_len)->check(CLI::PositiveNumber);
  dec->add_option("--rtol", config.rtol);
  dec->add_option("--atol", config.atol);
  dec->add_option("--trials", config.trials);
  dec->add_option("--seed", config.seed);
  dec->add_flag("--strict-closure", strict);
  dec->add_flag("--json", json);
  dec->add_option("--cert-out", cert_out);

  auto* fp = app.add_subcommand("fingerprint", "Print trace invariants of a matrix set");
  fp->add_option("--input", input)->required();
  fp->add_option("--kind", fp_kind)
      ->required()
      ->check(CLI::IsMember({"plain", "gram-star", "gram-transpose"}));
  fp->add_option("--max-word-len", max_len)->required()->check(CLI::PositiveNumber);
  fp->add_flag("--json", json);

  auto* gen = app.add_subcommand("generate", "Write a random instance pair");
  gen->add_option("--kind", kind)->required()->check(CLI::IsMember(kKindNames));
  gen->add_option("--rows", rows)->required()->check(CLI::PositiveNumber);
  gen->add_option("--cols", cols)->required()->check(CLI::PositiveNumber);
  gen->add_option("--count", count)->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed)->required();
  gen->add_option("--perturb", perturb)->check(CLI::NonNegativeNumber);
  gen->add_option("--out-left", out_left)->required();
  gen->add_option("--out-right", out_right)->required();

  auto* ver = app.add_subcommand("verify", "Re-check a certificate against two matrix sets");
  ver->add_option("--kind", kind)->required()->check(CLI::IsMember(kKindNames));
  ver->add_option("--cert", cert)->required();
  ver->add_option("--left", left)->required();
  ver->add_option("--right", right)->required();
  ver->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*dec) {
      if (dec_len->count() > 0) config.max_word_len = max_len;
      config.augment_closure = !strict;
      return run_decide(kind, left, right, config, json, cert_out);
    }
    if (*fp) return run_fingerprint(input, fp_kind, max_len, json);
    if (*gen) {
      const Instance inst = generate_instance(*parse_kind(kind), rows, cols, count, seed, perturb);
      io::save_matrix_set(inst.a, out_left);
      io::save_matrix_set(inst.b, out_right);
      return 0;
    }
    if (*ver) return run_verify(kind, cert, left, right, json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
