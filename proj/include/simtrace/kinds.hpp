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

#include <optional>
#include <string>
#include <string_view>

#include "simtrace/intertwiner.hpp"
#include "simtrace/matrix.hpp"

namespace simtrace {

enum class Kind {
  UnitarySimilar,
  OrthogonalSimilar,
  ComplexOrthogonalSimilar,
  UnitaryEquiv,
  OrthogonalEquiv,
  ComplexOrthogonalEquiv,
};

/// CLI spelling, e.g. "unitary-similar".
std::string_view to_string(Kind kind);
std::optional<Kind> parse_kind(std::string_view name);

bool is_similarity(Kind kind);
bool requires_real(Kind kind);
IsometryKind isometry_kind(Kind kind);
Star kind_star(Kind kind);

}  // namespace simtrace
