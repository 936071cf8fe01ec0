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

#include "helper_audit/seeds.hpp"

#include <cctype>

#include "helper_audit/corpus_io.hpp"
#include "helper_audit/error.hpp"
#include "helper_audit/ir.hpp"

namespace helper_audit {

using nlohmann::json;

const char* to_string(IdentityKind k) {
  switch (k) {
    case IdentityKind::PackageName: return "packageName";
    case IdentityKind::Uid: return "uid";
    case IdentityKind::Pid: return "pid";
    case IdentityKind::Gid: return "gid";
    case IdentityKind::Tid: return "tid";
    case IdentityKind::Ppid: return "ppid";
    case IdentityKind::UserHandle: return "userHandle";
  }
  return "";
}

const std::vector<IdentityKind>& all_identity_kinds() {
  static const std::vector<IdentityKind> kinds = {
      IdentityKind::PackageName, IdentityKind::Uid,  IdentityKind::Pid,
      IdentityKind::Gid,         IdentityKind::Tid,  IdentityKind::Ppid,
      IdentityKind::UserHandle};
  return kinds;
}

namespace {

std::optional<IdentityKind> parse_identity_kind(std::string_view s) {
  for (auto k : all_identity_kinds()) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

}  // namespace

SeedList SeedList::defaults() {
  SeedList s;
  s.registrationMethods = {"ServiceManager.addService", "SystemService.publishBinderService"};
  s.stubMarkers = {"IBinder", "IInterface"};
  s.helperPackagePrefixes = {"android."};
  s.statusApis = {"isResumed", "isForeground", "isUidForeground", "isActivityResumed",
                  "hasWindowFocus"};
  s.binderIdentitySources = {"Binder.getCallingUid()", "Binder.getCallingPid()"};
  s.handledExceptions = {"BadParcelableException",  "IllegalArgumentException",
                         "IllegalStateException",   "NullPointerException",
                         "SecurityException",       "NetworkOnMainThreadException"};
  s.collectionMutators = {".add", ".put", ".offer"};
  s.collectionQueries = {".size", ".isEmpty"};
  s.listenerTypes = {"Listener", "Callback", "Observer"};
  s.identityKinds = {
      {"getPackageName", IdentityKind::PackageName},
      {"getOpPackageName", IdentityKind::PackageName},
      {"getBasePackageName", IdentityKind::PackageName},
      {"myUid", IdentityKind::Uid},
      {"getUidForPid", IdentityKind::Uid},
      {"getUserId", IdentityKind::Uid},
      {"myPid", IdentityKind::Pid},
      {"getPids", IdentityKind::Pid},
      {"getPidsForCommands", IdentityKind::Pid},
      {"getGidForName", IdentityKind::Gid},
      {"getProcessGroup", IdentityKind::Gid},
      {"myTid", IdentityKind::Tid},
      {"myPpid", IdentityKind::Ppid},
      {"getParentPid", IdentityKind::Ppid},
      {"myUserHandle", IdentityKind::UserHandle},
  };
  for (const auto& [name, kind] : s.identityKinds) s.identityAccess.push_back(name);
  s.identityEnforce = {"checkPackage",
                       "checkOperation",
                       "checkOp",
                       "noteOperation",
                       "noteOp",
                       "checkPermission",
                       "checkUidPermission",
                       "checkCallingPermission",
                       "checkCallingOrSelfPermission",
                       "enforceCallingPermission",
                       "enforceCallingOrSelfPermission"};
  s.keywords = {"userid", "uid", "pid", "identity", "package", "enforce", "permission", "check",
                "user"};
  s.classifyAccessTokens = {"get", "my",  "calling", "uid",    "pid",     "gid",
                            "tid", "ppid", "userid", "identity", "package"};
  s.classifyEnforceTokens = {"check", "enforce", "verify"};
  return s;
}

namespace {

std::vector<std::string> string_list(const json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("seed list: '" + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw ConfigError("seed list: '" + key + "' must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

SeedList seed_list_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("seed list must be a JSON object");
  SeedList s = SeedList::defaults();
  const std::map<std::string, std::vector<std::string>*> lists = {
      {"registration_methods", &s.registrationMethods},
      {"stub_markers", &s.stubMarkers},
      {"helper_package_prefixes", &s.helperPackagePrefixes},
      {"status_apis", &s.statusApis},
      {"binder_identity_sources", &s.binderIdentitySources},
      {"handled_exceptions", &s.handledExceptions},
      {"collection_mutators", &s.collectionMutators},
      {"collection_queries", &s.collectionQueries},
      {"listener_types", &s.listenerTypes},
      {"identity_access", &s.identityAccess},
      {"identity_enforce", &s.identityEnforce},
      {"keywords", &s.keywords},
      {"classify_access_tokens", &s.classifyAccessTokens},
      {"classify_enforce_tokens", &s.classifyEnforceTokens},
  };
  for (const auto& [key, value] : j.items()) {
    if (auto it = lists.find(key); it != lists.end()) {
      *it->second = string_list(value, key);
    } else if (key == "identity_kinds") {
      if (!value.is_object()) throw ConfigError("seed list: 'identity_kinds' must be an object");
      s.identityKinds.clear();
      for (const auto& [name, kind] : value.items()) {
        auto k = kind.is_string() ? parse_identity_kind(kind.get<std::string>()) : std::nullopt;
        if (!k) throw ConfigError("seed list: unknown identity kind for '" + name + "'");
        s.identityKinds[name] = *k;
      }
    } else {
      throw ConfigError("seed list: unknown key '" + key + "'");
    }
  }
  for (auto& kw : s.keywords) {
    for (auto& ch : kw) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return s;
}

SeedList parse_seed_list(std::string_view text) {
  json j;
  try {
    j = parse_json_text(text);
  } catch (const SyntaxError& e) {
    throw ConfigError(std::string("seed list: ") + e.what());
  }
  return seed_list_from_json(j);
}

nlohmann::ordered_json seed_list_to_json(const SeedList& s) {
  nlohmann::ordered_json j;
  j["registration_methods"] = s.registrationMethods;
  j["stub_markers"] = s.stubMarkers;
  j["helper_package_prefixes"] = s.helperPackagePrefixes;
  j["status_apis"] = s.statusApis;
  j["binder_identity_sources"] = s.binderIdentitySources;
  j["handled_exceptions"] = s.handledExceptions;
  j["collection_mutators"] = s.collectionMutators;
  j["collection_queries"] = s.collectionQueries;
  j["listener_types"] = s.listenerTypes;
  nlohmann::ordered_json kinds = nlohmann::ordered_json::object();
  for (const auto& [name, kind] : s.identityKinds) kinds[name] = to_string(kind);
  j["identity_kinds"] = kinds;
  j["identity_access"] = s.identityAccess;
  j["identity_enforce"] = s.identityEnforce;
  j["keywords"] = s.keywords;
  j["classify_access_tokens"] = s.classifyAccessTokens;
  j["classify_enforce_tokens"] = s.classifyEnforceTokens;
  return j;
}

namespace {

bool boundary_suffix(std::string_view text, std::string_view suffix) {
  if (suffix.empty() || suffix.size() > text.size()) return false;
  if (text.substr(text.size() - suffix.size()) != suffix) return false;
  if (suffix.size() == text.size()) return true;
  if (suffix.front() == '.' || suffix.front() == '$') return true;
  char before = text[text.size() - suffix.size() - 1];
  return before == '.' || before == '$';
}

}  // namespace

bool name_matches(std::string_view methodRef, std::string_view pattern) {
  if (pattern.find('(') != std::string_view::npos) return boundary_suffix(methodRef, pattern);
  if (pattern.find('.') != std::string_view::npos) {
    return boundary_suffix(qualified_name(methodRef), pattern);
  }
  return simple_name(methodRef) == pattern;
}

bool name_matches_any(std::string_view methodRef, const std::vector<std::string>& patterns) {
  for (const auto& p : patterns) {
    if (name_matches(methodRef, p)) return true;
  }
  return false;
}

bool class_matches(std::string_view className, std::string_view suffix) {
  return boundary_suffix(className, suffix);
}

std::set<std::string> tokenize_identifier(std::string_view name) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(cur);
    cur.clear();
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(name[i]);
    if (c == '_' || c == '-' || c == '$' || c == '.') {
      flush();
      continue;
    }
    if (std::isupper(c) && !cur.empty()) {
      unsigned char prev = static_cast<unsigned char>(name[i - 1]);
      bool nextLower = i + 1 < name.size() && std::islower(static_cast<unsigned char>(name[i + 1]));
      // "fooBar" splits before B; "UIDFor" splits before F (end of an acronym).
      if (std::islower(prev) || std::isdigit(prev) || (std::isupper(prev) && nextLower)) flush();
    }
    cur += static_cast<char>(std::tolower(c));
  }
  flush();
  std::set<std::string> out(tokens.begin(), tokens.end());
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) out.insert(tokens[i] + tokens[i + 1]);
  return out;
}

}  // namespace helper_audit
