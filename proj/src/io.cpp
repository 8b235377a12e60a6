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

#include "simtrace/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace simtrace::io {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::SchemaError, msg); }

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

double finite_number(const Json& v, const std::string& where) {
  if (!v.is_number()) schema(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) schema(where + ": value is not finite");
  return x;
}

Complex parse_entry(const Json& v, Field field, const std::string& where) {
  if (field == Field::Real) {
    if (v.is_array()) schema(where + ": real file contains a [re, im] pair");
    return Complex(finite_number(v, where), 0.0);
  }
  if (!v.is_array() || v.size() != 2) schema(where + ": expected a [re, im] pair");
  return Complex(finite_number(v[0], where), finite_number(v[1], where));
}

CMat parse_entries(const Json& entries, Index rows, Index cols, Field field,
                   const std::string& where) {
  if (!entries.is_array()) schema(where + ": entries must be an array of rows");
  if (static_cast<Index>(entries.size()) != rows) {
    schema(where + ": has " + std::to_string(entries.size()) + " rows, expected " +
           std::to_string(rows));
  }
  CMat out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = entries[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      schema(where + ": row " + std::to_string(i) + " has " +
             std::to_string(row.is_array() ? row.size() : 0) + " entries, expected " +
             std::to_string(cols));
    }
    for (Index j = 0; j < cols; ++j) {
      out(i, j) = parse_entry(row[static_cast<std::size_t>(j)], field,
                              where + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  return out;
}

Field parse_field(const Json& obj, const std::string& where) {
  if (!obj.contains("field") || !obj["field"].is_string()) schema(where + ": missing \"field\"");
  const std::string f = obj["field"].get<std::string>();
  if (f == "real") return Field::Real;
  if (f == "complex") return Field::Complex;
  schema(where + ": field must be \"real\" or \"complex\"");
}

Index parse_dim(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number_integer() || obj[key].get<long long>() < 1) {
    schema(where + ": \"" + key + "\" must be a positive integer");
  }
  return static_cast<Index>(obj[key].get<long long>());
}

std::string number(double x) { return Json(x).dump(); }

std::string entry_text(Complex z, Field f) {
  if (f == Field::Real) return number(z.real());
  return "[" + number(z.real()) + ", " + number(z.imag()) + "]";
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json word_json(const Word& w) {
  Json out = Json::array();
  for (Letter l : w.letters()) out.push_back(l);
  return out;
}

}  // namespace

MatrixSet parse_matrix_set(const std::string& text, const std::string& source) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw Error(ErrorCode::ParseError, source + ": line " + std::to_string(line) + ", column " +
                                           std::to_string(col) + ": " + e.what());
  } catch (const nlohmann::json::out_of_range& e) {
    schema(source + ": number is not finite: " + e.what());
  }
  if (!doc.is_object()) schema(source + ": top level must be an object");
  const Field field = parse_field(doc, source);
  const Index rows = parse_dim(doc, "rows", source);
  const Index cols = parse_dim(doc, "cols", source);
  if (!doc.contains("matrices") || !doc["matrices"].is_array() || doc["matrices"].empty()) {
    schema(source + ": \"matrices\" must be a nonempty array");
  }
  std::vector<Matrix> matrices;
  std::vector<std::string> names;
  std::set<std::string> seen;
  std::size_t index = 0;
  for (const Json& item : doc["matrices"]) {
    ++index;
    if (!item.is_object()) schema(source + ": matrix " + std::to_string(index) + " is not an object");
    std::string name;
    if (item.contains("name")) {
      if (!item["name"].is_string()) schema(source + ": matrix " + std::to_string(index) + " name is not a string");
      name = item["name"].get<std::string>();
    }
    if (name.empty()) name = "A" + std::to_string(index);
    const std::string where = source + ": matrix \"" + name + "\"";
    if (!seen.insert(name).second) schema(where + ": duplicate name");
    if (!item.contains("entries")) schema(where + ": missing \"entries\"");
    matrices.emplace_back(parse_entries(item["entries"], rows, cols, field, where), field);
    names.push_back(name);
  }
  return MatrixSet(std::move(matrices), std::move(names));
}

std::string format_matrix_set(const MatrixSet& s) {
  std::ostringstream out;
  const Field f = s.field();
  out << "{\n";
  out << "  \"field\": \"" << to_string(f) << "\",\n";
  out << "  \"rows\": " << s.rows() << ",\n";
  out << "  \"cols\": " << s.cols() << ",\n";
  out << "  \"matrices\": [\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Matrix& m = s[k];
    out << "    {\n";
    out << "      \"name\": " << Json(s.labels()[k]).dump() << ",\n";
    out << "      \"entries\": [\n";
    for (Index i = 0; i < m.rows(); ++i) {
      out << "        [";
      for (Index j = 0; j < m.cols(); ++j) {
        if (j > 0) out << ", ";
        out << entry_text(m(i, j), f);
      }
      out << "]" << (i + 1 < m.rows() ? "," : "") << "\n";
    }
    out << "      ]\n";
    out << "    }" << (k + 1 < s.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "cannot read " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
}

MatrixSet load_matrix_set(const std::string& path) { return parse_matrix_set(read_file(path), path); }

void save_matrix_set(const MatrixSet& s, const std::string& path) {
  write_file(path, format_matrix_set(s));
}

Json matrix_to_json(const Matrix& m) {
  Json j;
  j["field"] = std::string(to_string(m.field()));
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      if (m.is_real()) {
        row.push_back(m(i, c).real());
      } else {
        row.push_back(complex_json(m(i, c)));
      }
    }
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

Matrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_object()) schema(what + ": expected a matrix object");
  const Field f = parse_field(j, what);
  const Index rows = parse_dim(j, "rows", what);
  const Index cols = parse_dim(j, "cols", what);
  if (!j.contains("entries")) schema(what + ": missing \"entries\"");
  return Matrix(parse_entries(j["entries"], rows, cols, f, what), f);
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["kind"] = std::string(to_string(c.kind));
  j["U"] = matrix_to_json(c.left);
  j["V"] = c.right ? matrix_to_json(*c.right) : Json(nullptr);
  j["residual"] = c.residual;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  if (!j.is_object()) schema("certificate: expected an object");
  if (!j.contains("kind") || !j["kind"].is_string()) schema("certificate: missing \"kind\"");
  const auto kind = parse_kind(j["kind"].get<std::string>());
  if (!kind) schema("certificate: unknown kind \"" + j["kind"].get<std::string>() + "\"");
  if (!j.contains("U")) schema("certificate: missing \"U\"");
  Certificate c;
  c.kind = *kind;
  c.left = matrix_from_json(j["U"], "certificate U");
  if (j.contains("V") && !j["V"].is_null()) c.right = matrix_from_json(j["V"], "certificate V");
  if (j.contains("residual")) c.residual = finite_number(j["residual"], "certificate residual");
  return c;
}

Certificate load_certificate(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return certificate_from_json(Json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw Error(ErrorCode::ParseError, path + ": line " + std::to_string(line) + ", column " +
                                           std::to_string(col) + ": " + e.what());
  }
}

Json fingerprint_to_json(const Fingerprint& fp) {
  Json j;
  j["alphabet"] = fp.alphabet.labels;
  j["max_len"] = fp.max_len;
  Json entries = Json::array();
  for (const auto& e : fp.entries) {
    Json item;
    item["word"] = word_json(e.word);
    item["trace"] = complex_json(e.trace);
    entries.push_back(std::move(item));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json decision_to_json(const Decision& d) {
  Json j;
  j["kind"] = std::string(to_string(d.kind));
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Equivalent>) {
          j["verdict"] = "equivalent";
          j["certificate"] = certificate_to_json(v.certificate);
        } else if constexpr (std::is_same_v<T, Distinguished>) {
          j["verdict"] = "distinguished";
          j["word"] = word_json(v.word);
          j["word_labels"] = v.alphabet.render(v.word);
          j["alphabet"] = v.alphabet.labels;
          j["trace_a"] = complex_json(v.trace_a);
          j["trace_b"] = complex_json(v.trace_b);
        } else {
          j["verdict"] = "inconclusive";
          j["reason"] = v.reason;
        }
      },
      d.verdict);
  j["word_cap_used"] = d.word_cap_used;
  j["bound"] = d.bound;
  Json cfg;
  cfg["max_word_len"] = d.config.max_word_len ? Json(*d.config.max_word_len) : Json(nullptr);
  cfg["rtol"] = d.config.rtol;
  cfg["atol"] = d.config.atol;
  cfg["trials"] = d.config.trials;
  cfg["seed"] = d.config.seed;
  cfg["augment_closure"] = d.config.augment_closure;
  j["config"] = std::move(cfg);
  return j;
}

Json report_to_json(const VerificationReport& r) {
  Json j;
  j["isometry_defect_left"] = r.isometry_defect_left;
  j["isometry_defect_right"] = r.isometry_defect_right;
  j["intertwining_residual"] = r.intertwining_residual;
  j["pass"] = r.pass;
  return j;
}

}  // namespace simtrace::io
