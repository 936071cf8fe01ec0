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

// Enforcement extraction for both sides of a method pair.
//
// A guard "gates" a call when the If precedes the call and either contains
// it or has a branch that ends in Throw or Return.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "helper_audit/callgraph.hpp"
#include "helper_audit/dataflow.hpp"
#include "helper_audit/ir.hpp"
#include "helper_audit/mining.hpp"
#include "helper_audit/seeds.hpp"
#include "helper_audit/service_model.hpp"

namespace helper_audit {

enum class EnforcementKind {
  ParamValidation,
  CallerStatus,
  IdentityPassing,
  EnvCheck,
  DupConstraint,
  IdentityCheck,
  PermissionCheck
};
const char* to_string(EnforcementKind k);

enum class Side { Helper, Service };
const char* to_string(Side s);

struct Locus {
  std::string method;
  std::size_t statement = 0;

  friend auto operator<=>(const Locus&, const Locus&) = default;
  friend bool operator==(const Locus&, const Locus&) = default;
};

struct EnforcementSet {
  Side side = Side::Helper;
  std::map<EnforcementKind, std::set<Locus>> mechanisms;
  std::set<std::size_t> validatedParams;  // H or S
  std::set<std::pair<IdentityKind, std::size_t>> identitiesPassed;
  std::vector<EscapeReport> escapeHazards;
  // Positions validated by a guard whose failing branch throws.
  std::set<std::size_t> throwGuardedParams;
  // Service side: positions consumed by an identity check, and whether an
  // identity check consumed a Binder-derived identity.
  std::set<std::size_t> identityCoveredParams;
  bool binderIdentityChecked = false;
  // Helper side: IPC methods whose boolean result gates the call.
  std::set<std::string> envGates;

  bool has(EnforcementKind k) const { return mechanisms.count(k) != 0; }
  void add(EnforcementKind k, std::vector<Locus> evidence);
  void merge(const EnforcementSet& other);
};

struct DetectorContext {
  const Corpus& corpus;
  const ServiceRegistry& registry;
  const SeedList& seeds;
  MinedVocabulary mined;
  CallbackTable table;
  std::size_t maxDepth = 12;
  std::size_t chainLimit = 256;

  std::vector<std::string> identity_access() const;
  std::vector<std::string> identity_enforce() const;
  EscapeConfig escape_config() const;
};

// Identity kind of an identity-access method: the mapping table first, then
// a token heuristic for mined names.
std::optional<IdentityKind> identity_kind_of(const std::string& simpleName, const SeedList& seeds);

// Helper-side detectors over one chain ending at the pair's proxy.
struct ParamValidationResult {
  std::vector<Locus> evidence;
  std::set<std::size_t> validated;
  std::set<std::size_t> throwGuarded;
};
ParamValidationResult detect_param_validation(const DetectorContext& ctx, const CallChain& chain);
std::vector<Locus> detect_caller_status(const DetectorContext& ctx, const CallChain& chain);
std::set<std::pair<IdentityKind, std::size_t>> detect_identity_passing(const DetectorContext& ctx,
                                                                       const CallChain& chain);
struct EnvCheckResult {
  std::vector<Locus> evidence;
  std::set<std::string> gates;  // gating IPC methods
};
EnvCheckResult detect_env_check(const DetectorContext& ctx, const CallChain& chain);
std::vector<Locus> detect_dup_constraint(const DetectorContext& ctx, const CallChain& chain);

// All helper-side mechanisms of a pair, over every chain from the helper
// method to the pair's proxy.
EnforcementSet detect_helper_enforcements(const DetectorContext& ctx, const MethodPair& pair);

// Service side. Throws UnknownMethod.
EnforcementSet detect_service_enforcements(const DetectorContext& ctx, const std::string& serviceMethod);

}  // namespace helper_audit
