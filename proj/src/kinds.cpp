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

#include "simtrace/kinds.hpp"

#include <array>
#include <utility>

namespace simtrace {

namespace {

constexpr std::array<std::pair<Kind, std::string_view>, 6> kNames{{
    {Kind::UnitarySimilar, "unitary-similar"},
    {Kind::OrthogonalSimilar, "orthogonal-similar"},
    {Kind::ComplexOrthogonalSimilar, "complex-orthogonal-similar"},
    {Kind::UnitaryEquiv, "unitary-equiv"},
    {Kind::OrthogonalEquiv, "orthogonal-equiv"},
    {Kind::ComplexOrthogonalEquiv, "complex-orthogonal-equiv"},
}};

}  // namespace

std::string_view to_string(Kind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<Kind> parse_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool is_similarity(Kind kind) {
  return kind == Kind::UnitarySimilar || kind == Kind::OrthogonalSimilar ||
         kind == Kind::ComplexOrthogonalSimilar;
}

bool requires_real(Kind kind) {
  return kind == Kind::OrthogonalSimilar || kind == Kind::OrthogonalEquiv;
}

IsometryKind isometry_kind(Kind kind) {
  switch (kind) {
    case Kind::UnitarySimilar:
    case Kind::UnitaryEquiv:
      return IsometryKind::Unitary;
    case Kind::OrthogonalSimilar:
    case Kind::OrthogonalEquiv:
      return IsometryKind::RealOrthogonal;
    case Kind::ComplexOrthogonalSimilar:
    case Kind::ComplexOrthogonalEquiv:
      return IsometryKind::ComplexOrthogonal;
  }
  return IsometryKind::Unitary;
}

Star kind_star(Kind kind) { return isometry_star(isometry_kind(kind)); }

}  // namespace simtrace
