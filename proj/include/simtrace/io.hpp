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

#include <string>

#include <json.hpp>

#include "simtrace/closure.hpp"
#include "simtrace/engine.hpp"
#include "simtrace/fingerprint.hpp"
#include "simtrace/rectangular.hpp"

namespace simtrace::io {

using Json = nlohmann::ordered_json;

/// Parses a matrix-set document. `source` names the input in error messages.
/// Malformed JSON throws ParseError (with line and column); shape, field or
/// value violations throw SchemaError.
MatrixSet parse_matrix_set(const std::string& text, const std::string& source = "<input>");

/// Canonical serialization: fixed key order, shortest round-trip numbers,
/// one matrix row per line, trailing newline.
std::string format_matrix_set(const MatrixSet& s);

MatrixSet load_matrix_set(const std::string& path);
void save_matrix_set(const MatrixSet& s, const std::string& path);

/// {"field", "rows", "cols", "entries"}.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& what = "matrix");

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);
Certificate load_certificate(const std::string& path);

Json fingerprint_to_json(const Fingerprint& fp);
Json decision_to_json(const Decision& d);
Json report_to_json(const VerificationReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace simtrace::io
