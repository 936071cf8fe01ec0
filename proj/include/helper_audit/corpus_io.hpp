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

// JSON reading and writing of corpus documents and callback tables.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "helper_audit/ir.hpp"
#include "json.hpp"

namespace helper_audit {

using ordered_json = nlohmann::ordered_json;

// Parses JSON text, turning parser failures into SyntaxError("line:col").
nlohmann::json parse_json_text(std::string_view text);

// Strict schema read; unknown keys raise SyntaxError naming the JSON pointer.
CorpusDocument parse_document(std::string_view text);
CorpusDocument document_from_json(const nlohmann::json& j);
// parse_document followed by resolution (ResolutionError, CycleError).
Corpus parse_corpus(std::string_view text);

ordered_json document_to_json(const CorpusDocument& doc);
// Compact single-line form when indent < 0.
std::string serialize_corpus(const CorpusDocument& doc, int indent = -1);

// Standalone callback table file: [{"registration", "interface", "callback"}].
std::vector<CallbackEntry> parse_callback_table(std::string_view text);

Operand operand_from_json(const nlohmann::json& j, const std::string& where);
ordered_json operand_to_json(const Operand& o);

}  // namespace helper_audit
