// Copyright 2026 The helper-audit Authors
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
#include <vector>

#include "helper_audit/ir.hpp"

namespace helper_audit {

struct Diagnostic {
  std::string code;  // e.g. "unassigned-variable"
  std::string className;
  std::string method;  // signature, empty for class-level issues
  std::optional<std::size_t> statement;
  std::string message;

  std::string to_string() const;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
  friend auto operator<=>(const Diagnostic&, const Diagnostic&) = default;
};

// Checks the type and method invariants the parser does not enforce.
// The result is sorted, so it does not depend on class order in the input.
std::vector<Diagnostic> validate_corpus(const Corpus& corpus);

}  // namespace helper_audit
