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

// The seed-list file: every Android-specific name the analyses key on.

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace helper_audit {

enum class IdentityKind { PackageName, Uid, Pid, Gid, Tid, Ppid, UserHandle };

const char* to_string(IdentityKind k);
const std::vector<IdentityKind>& all_identity_kinds();

struct SeedList {
  // service-model
  std::vector<std::string> registrationMethods;
  std::vector<std::string> stubMarkers;
  std::vector<std::string> helperPackagePrefixes;
  // detectors
  std::vector<std::string> statusApis;
  std::vector<std::string> binderIdentitySources;
  std::vector<std::string> handledExceptions;
  std::vector<std::string> collectionMutators;
  std::vector<std::string> collectionQueries;  // size/emptiness probes
  std::vector<std::string> listenerTypes;      // suffixes of listener parameter types
  std::map<std::string, IdentityKind> identityKinds;
  // mining
  std::vector<std::string> identityAccess;
  std::vector<std::string> identityEnforce;
  std::vector<std::string> keywords;
  std::vector<std::string> classifyAccessTokens;
  std::vector<std::string> classifyEnforceTokens;

  static SeedList defaults();
};

// Sections absent from the file keep their defaults. Unknown keys raise
// ConfigError.
SeedList parse_seed_list(std::string_view text);
SeedList seed_list_from_json(const nlohmann::json& j);
nlohmann::ordered_json seed_list_to_json(const SeedList& seeds);

// Name-pattern matching shared by every configurable name set:
//  - a pattern with '(' matches a method reference suffix ("Binder.getCallingUid()"),
//  - a pattern with '.' matches the suffix of "Class.name" ("ServiceManager.addService"),
//  - otherwise the pattern is compared with the simple method name.
// Suffixes must start at a '.' or '$' boundary.
bool name_matches(std::string_view methodRef, std::string_view pattern);
bool name_matches_any(std::string_view methodRef, const std::vector<std::string>& patterns);
// Class-name suffix match at a '.' or '$' boundary.
bool class_matches(std::string_view className, std::string_view suffix);

// camelCase / snake_case decomposition, lowercased. Adjacent token pairs are
// also joined ("user","id" -> "userid") so compound keywords match.
std::set<std::string> tokenize_identifier(std::string_view name);

}  // namespace helper_audit
