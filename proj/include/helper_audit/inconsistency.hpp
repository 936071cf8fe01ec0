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

// Helper/service comparison, permission filtering and restriction tallies.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "helper_audit/detectors.hpp"
#include "helper_audit/service_model.hpp"

namespace helper_audit {

enum class VulnClass { IllegalParameter, FakeIdentity, FakeStatus, EnvBypass, IpcFlood };
const char* to_string(VulnClass v);
std::optional<VulnClass> parse_vuln_class(std::string_view s);
const std::vector<VulnClass>& all_vuln_classes();

enum class PermissionLevel { Normal, Dangerous, Signature, SignatureOrSystem };
const char* to_string(PermissionLevel l);
std::optional<PermissionLevel> parse_permission_level(std::string_view s);

enum class Restriction { Whitelist, Greylist, Blacklist };
const char* to_string(Restriction r);
std::optional<Restriction> parse_restriction(std::string_view s);
const std::vector<Restriction>& all_restrictions();

struct Missing {
  std::set<EnforcementKind> mechanisms;
  std::set<std::size_t> params;

  bool empty() const { return mechanisms.empty() && params.empty(); }
  friend bool operator==(const Missing&, const Missing&) = default;
};

struct Inconsistency {
  VulnClass vulnClass = VulnClass::IllegalParameter;
  Missing missing;
  bool escapeHazard = false;

  friend bool operator==(const Inconsistency&, const Inconsistency&) = default;
};

struct CompareOptions {
  // illegalParameter also needs a service-side escape hazard or a throwing
  // helper guard on the unchecked parameter.
  bool strengthen = true;
};

std::vector<Inconsistency> compare_pair(const EnforcementSet& helper, const EnforcementSet& service,
                                        const CompareOptions& options = {});

struct Finding {
  MethodPair pair;
  VulnClass vulnClass = VulnClass::IllegalParameter;
  Missing missingOnService;
  std::vector<Locus> helperEvidence;
  std::vector<Locus> serviceEvidence;
  bool escapeHazard = false;
  std::optional<PermissionLevel> permissionLevel;
  std::optional<Restriction> restriction;
  bool suppressed = false;
  std::string suppressionReason;
};

// Presentation order: hazardous identity/parameter findings first.
int severity_rank(const Finding& f);

std::vector<Finding> make_findings(const MethodPair& pair, const EnforcementSet& helper,
                                   const EnforcementSet& service, const CompareOptions& options = {});

struct PermissionEntry {
  std::string permission;
  PermissionLevel level = PermissionLevel::Normal;
};

struct PermissionMap {
  std::map<std::string, std::vector<PermissionEntry>> entries;

  // Highest level protecting the IPC signature, if mapped.
  std::optional<PermissionLevel> level_of(const std::string& ipcSignature) const;
};

// Throws ConfigError on schema errors.
PermissionMap parse_permission_map(std::string_view text);

std::vector<Finding> apply_permission_filter(std::vector<Finding> findings, const PermissionMap& pmap);

struct RestrictionList {
  std::map<std::string, Restriction> entries;

  // IPC signature, then service method, then proxy method; whitelist when
  // none is listed.
  Restriction lookup(const MethodPair& pair) const;
};

RestrictionList parse_restriction_list(std::string_view text);

void annotate_restrictions(std::vector<Finding>& findings, const RestrictionList& rlist);

struct RestrictionTally {
  std::map<VulnClass, std::map<Restriction, std::size_t>> cells;
  std::map<VulnClass, std::size_t> byClass;
  std::map<Restriction, std::size_t> byRestriction;
  std::size_t total = 0;

  friend bool operator==(const RestrictionTally&, const RestrictionTally&) = default;
};

// Counts unsuppressed findings; every cell is present, zero or not.
RestrictionTally tally_restrictions(const std::vector<Finding>& findings, const RestrictionList& rlist);

// Report order: (ipcSignature, helper, vulnClass).
void sort_findings(std::vector<Finding>& findings);

}  // namespace helper_audit
