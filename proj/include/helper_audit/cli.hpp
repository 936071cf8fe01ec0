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


// Command-line frontend: validate, pairs, mine, analyze and gen.
//
// Exit codes: 0 clean, 1 corpus diagnostics, 2 input or config error,
// 3 unsuppressed findings.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace helper_audit {

enum ExitCode { kExitClean = 0, kExitDiagnostics = 1, kExitInputError = 2, kExitFindings = 3 };

// `args` includes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace helper_audit
