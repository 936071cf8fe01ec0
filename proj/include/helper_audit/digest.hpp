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

#include <string>
#include <string_view>

#include "helper_audit/ir.hpp"

namespace helper_audit {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

// "sha256:<hex>" over the compact canonical serialization.
std::string corpus_digest(const CorpusDocument& doc);

}  // namespace helper_audit
