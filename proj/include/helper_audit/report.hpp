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


// Serialized forms of analysis results. Markdown is always rendered from the
// JSON report, never from the in-memory structures.

#pragma once

#include <string>
#include <vector>

#include "helper_audit/analysis.hpp"
#include "helper_audit/corpus_io.hpp"

namespace helper_audit {

ordered_json pair_to_json(const MethodPair& pair);
ordered_json vocabulary_to_json(const MinedVocabulary& vocab);
ordered_json finding_to_json(const Finding& finding);
ordered_json tally_to_json(const RestrictionTally& tally);
ordered_json report_to_json(const AnalysisReport& report);

// Pretty JSON with a trailing newline.
std::string render_json(const ordered_json& j);
std::string render_markdown(const ordered_json& report);

// "pairs=<n> findings=<m> suppressed=<k>", counted from the JSON report.
std::string summary_line(const ordered_json& report);

}  // namespace helper_audit
