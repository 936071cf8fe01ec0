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

#include "helper_audit/inconsistency.hpp"

#include <algorithm>
#include <tuple>

#include "helper_audit/corpus_io.hpp"
#include "helper_audit/error.hpp"

namespace helper_audit {

const char* to_string(VulnClass v) {
  switch (v) {
    case VulnClass::IllegalParameter: return "illegalParameter";
    case VulnClass::FakeIdentity: return "fakeIdentity";
    case VulnClass::FakeStatus: return "fakeStatus";
    case VulnClass::EnvBypass: return "envBypass";
    case VulnClass::IpcFlood: return "ipcFlood";
  }
  return "";
}

const std::vector<VulnClass>& all_vuln_classes() {
  static const std::vector<VulnClass> all = {VulnClass::IllegalParameter, VulnClass::FakeIdentity,
                                             VulnClass::FakeStatus, VulnClass::EnvBypass, VulnClass::IpcFlood};
  return all;
}

std::optional<VulnClass> parse_vuln_class(std::string_view s) {
  for (auto v : all_vuln_classes()) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

const char* to_string(PermissionLevel l) {
  switch (l) {
    case PermissionLevel::Normal: return "normal";
    case PermissionLevel::Dangerous: return "dangerous";
    case PermissionLevel::Signature: return "signature";
    case PermissionLevel::SignatureOrSystem: return "signatureOrSystem";
  }
  return "";
}

std::optional<PermissionLevel> parse_permission_level(std::string_view s) {
  for (auto l : {PermissionLevel::Normal, PermissionLevel::Dangerous, PermissionLevel::Signature,
                 PermissionLevel::SignatureOrSystem}) {
    if (s == to_string(l)) return l;
  }
  return std::nullopt;
}

const char* to_string(Restriction r) {
  switch (r) {
    case Restriction::Whitelist: return "whitelist";
    case Restriction::Greylist: return "greylist";
    case Restriction::Blacklist: return "blacklist";
  }
  return "";
}

const std::vector<Restriction>& all_restrictions() {
  static const std::vector<Restriction> all = {Restriction::Whitelist, Restriction::Greylist,
                                               Restriction::Blacklist};
  return all;
}

std::optional<Restriction> parse_restriction(std::string_view s) {
  for (auto r : all_restrictions()) {
    if (s == to_string(r)) return r;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::vector<Inconsistency> compare_pair(const EnforcementSet& helper, const EnforcementSet& service,
                                        const CompareOptions& options) {
  std::vector<Inconsistency> out;

  std::set<std::size_t> hazardous;
  for (const auto& e : service.escapeHazards) hazardous.insert(e.position);

  Inconsistency param{VulnClass::IllegalParameter, {}, false};
  for (auto p : helper.validatedParams) {
    if (service.validatedParams.count(p)) continue;
    bool hazard = hazardous.count(p) != 0;
    if (options.strengthen && !hazard && !helper.throwGuardedParams.count(p)) continue;
    param.missing.params.insert(p);
    param.escapeHazard = param.escapeHazard || hazard;
  }
  if (!param.missing.params.empty()) {
    param.missing.mechanisms.insert(EnforcementKind::ParamValidation);
    out.push_back(param);
  }

  if (!helper.identitiesPassed.empty() && !service.binderIdentityChecked) {
    Inconsistency id{VulnClass::FakeIdentity, {}, false};
    for (const auto& [kind, p] : helper.identitiesPassed) {
      if (!service.identityCoveredParams.count(p)) id.missing.params.insert(p);
    }
    if (!id.missing.params.empty()) {
      id.missing.mechanisms.insert(EnforcementKind::IdentityCheck);
      for (auto p : id.missing.params) id.escapeHazard = id.escapeHazard || hazardous.count(p);
      out.push_back(id);
    }
  }

  if (helper.has(EnforcementKind::CallerStatus) && !service.has(EnforcementKind::CallerStatus) &&
      !service.has(EnforcementKind::IdentityCheck)) {
    out.push_back(Inconsistency{VulnClass::FakeStatus, {{EnforcementKind::CallerStatus}, {}}, false});
  }
  if (helper.has(EnforcementKind::EnvCheck) && !service.has(EnforcementKind::EnvCheck)) {
    out.push_back(Inconsistency{VulnClass::EnvBypass, {{EnforcementKind::EnvCheck}, {}}, false});
  }
  if (helper.has(EnforcementKind::DupConstraint) && !service.has(EnforcementKind::DupConstraint)) {
    out.push_back(Inconsistency{VulnClass::IpcFlood, {{EnforcementKind::DupConstraint}, {}}, false});
  }
  return out;
}

int severity_rank(const Finding& f) {
  switch (f.vulnClass) {
    case VulnClass::FakeIdentity: return f.escapeHazard ? 0 : 1;
    case VulnClass::IllegalParameter: return f.escapeHazard ? 0 : 1;
    case VulnClass::IpcFlood: return 2;
    case VulnClass::FakeStatus: return 3;
    case VulnClass::EnvBypass: return 4;
  }
  return 5;
}

namespace {

EnforcementKind helper_kind_of(VulnClass v) {
  switch (v) {
    case VulnClass::IllegalParameter: return EnforcementKind::ParamValidation;
    case VulnClass::FakeIdentity: return EnforcementKind::IdentityPassing;
    case VulnClass::FakeStatus: return EnforcementKind::CallerStatus;
    case VulnClass::EnvBypass: return EnforcementKind::EnvCheck;
    case VulnClass::IpcFlood: return EnforcementKind::DupConstraint;
  }
  return EnforcementKind::ParamValidation;
}

std::vector<Locus> loci(const EnforcementSet& s, EnforcementKind k) {
  auto it = s.mechanisms.find(k);
  if (it == s.mechanisms.end()) return {};
  return {it->second.begin(), it->second.end()};
}

}  // namespace

std::vector<Finding> make_findings(const MethodPair& pair, const EnforcementSet& helper,
                                   const EnforcementSet& service, const CompareOptions& options) {
  std::vector<Finding> out;
  for (const auto& inc : compare_pair(helper, service, options)) {
    Finding f;
    f.pair = pair;
    f.vulnClass = inc.vulnClass;
    f.missingOnService = inc.missing;
    f.escapeHazard = inc.escapeHazard;
    f.helperEvidence = loci(helper, helper_kind_of(inc.vulnClass));
    for (auto k : inc.missing.mechanisms) {
      auto l = loci(service, k);
      f.serviceEvidence.insert(f.serviceEvidence.end(), l.begin(), l.end());
    }
    if (inc.vulnClass == VulnClass::IllegalParameter) {
      for (const auto& e : service.escapeHazards) {
        if (!inc.missing.params.count(e.position)) continue;
        for (const auto& site : e.escapeSites) f.serviceEvidence.push_back(Locus{pair.service, site.statement});
      }
    }
    std::sort(f.serviceEvidence.begin(), f.serviceEvidence.end());
    f.serviceEvidence.erase(std::unique(f.serviceEvidence.begin(), f.serviceEvidence.end()),
                            f.serviceEvidence.end());
    out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<PermissionLevel> PermissionMap::level_of(const std::string& ipcSignature) const {
  auto it = entries.find(ipcSignature);
  if (it == entries.end() || it->second.empty()) return std::nullopt;
  PermissionLevel best = it->second.front().level;
  for (const auto& e : it->second) best = std::max(best, e.level);
  return best;
}

PermissionMap parse_permission_map(std::string_view text) {
  nlohmann::json j;
  try {
    j = parse_json_text(text);
  } catch (const SyntaxError& e) {
    throw ConfigError(std::string("permission map: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("permission map must be a JSON object");
  PermissionMap map;
  for (const auto& [sig, list] : j.items()) {
    if (!list.is_array()) throw ConfigError("permission map: entry '" + sig + "' must be an array");
    auto& out = map.entries[sig];
    for (const auto& e : list) {
      if (!e.is_object() || !e.contains("level") || !e["level"].is_string()) {
        throw ConfigError("permission map: entry '" + sig + "' needs a string 'level'");
      }
      for (const auto& [k, v] : e.items()) {
        if (k != "permission" && k != "level") throw ConfigError("permission map: unknown key '" + k + "'");
      }
      auto level = parse_permission_level(e["level"].get<std::string>());
      if (!level) throw ConfigError("permission map: unknown level '" + e["level"].get<std::string>() + "'");
      PermissionEntry pe;
      pe.level = *level;
      if (e.contains("permission")) {
        if (!e["permission"].is_string()) throw ConfigError("permission map: 'permission' must be a string");
        pe.permission = e["permission"].get<std::string>();
      }
      out.push_back(std::move(pe));
    }
  }
  return map;
}

std::vector<Finding> apply_permission_filter(std::vector<Finding> findings, const PermissionMap& pmap) {
  for (auto& f : findings) {
    f.permissionLevel = pmap.level_of(f.pair.ipcSignature);
    f.suppressed = f.permissionLevel && *f.permissionLevel >= PermissionLevel::Signature;
    f.suppressionReason = f.suppressed ? std::string("protected by ") + to_string(*f.permissionLevel) + " permission"
                                       : std::string();
  }
  return findings;
}

Restriction RestrictionList::lookup(const MethodPair& pair) const {
  for (const auto* key : {&pair.ipcSignature, &pair.service, &pair.proxy}) {
    if (auto it = entries.find(*key); it != entries.end()) return it->second;
  }
  return Restriction::Whitelist;
}

RestrictionList parse_restriction_list(std::string_view text) {
  nlohmann::json j;
  try {
    j = parse_json_text(text);
  } catch (const SyntaxError& e) {
    throw ConfigError(std::string("restriction list: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("restriction list must be a JSON object");
  RestrictionList list;
  for (const auto& [ref, v] : j.items()) {
    auto r = v.is_string() ? parse_restriction(v.get<std::string>()) : std::nullopt;
    if (!r) throw ConfigError("restriction list: bad category for '" + ref + "'");
    list.entries[ref] = *r;
  }
  return list;
}

void annotate_restrictions(std::vector<Finding>& findings, const RestrictionList& rlist) {
  for (auto& f : findings) f.restriction = rlist.lookup(f.pair);
}

RestrictionTally tally_restrictions(const std::vector<Finding>& findings, const RestrictionList& rlist) {
  RestrictionTally t;
  for (auto v : all_vuln_classes()) {
    t.byClass[v] = 0;
    for (auto r : all_restrictions()) t.cells[v][r] = 0;
  }
  for (auto r : all_restrictions()) t.byRestriction[r] = 0;
  for (const auto& f : findings) {
    if (f.suppressed) continue;
    auto r = rlist.lookup(f.pair);
    ++t.cells[f.vulnClass][r];
    ++t.byClass[f.vulnClass];
    ++t.byRestriction[r];
    ++t.total;
  }
  return t;
}

void sort_findings(std::vector<Finding>& findings) {
  std::sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
    return std::tie(a.pair.ipcSignature, a.pair.helper, a.vulnClass) <
           std::tie(b.pair.ipcSignature, b.pair.helper, b.vulnClass);
  });
}

}  // namespace helper_audit
