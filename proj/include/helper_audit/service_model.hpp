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

// System services, their IPC stubs/proxies, and the helper classes that wrap
// them.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "helper_audit/callgraph.hpp"
#include "helper_audit/ir.hpp"
#include "helper_audit/seeds.hpp"

namespace helper_audit {

struct ServiceRegistry {
  std::set<std::string> services;
  // IPC method reference (declared on the IPC interface) -> implementation.
  std::map<std::string, std::string> stubMethods;
  // IPC method reference -> client-side proxy implementation.
  std::map<std::string, std::string> proxyMethods;
  // IPC method references whose implementation is native.
  std::set<std::string> nativeStubs;
  std::set<std::string> ipcInterfaces;
  std::set<std::string> stubClasses;
  std::set<std::string> proxyClasses;
  IpcBoundary boundary;

  // IPC interface owning an IPC method reference.
  std::string interface_of(const std::string& ipcMethod) const;
  // Reverse of proxyMethods; empty string when `proxy` is not a proxy method.
  std::string ipc_method_of_proxy(const std::string& proxy) const;
};

struct MethodPair {
  std::string helper;
  std::string ipcSignature;
  std::string service;
  std::string helperClass;
  std::string proxy;
  bool native = false;

  friend auto operator<=>(const MethodPair&, const MethodPair&) = default;
  friend bool operator==(const MethodPair&, const MethodPair&) = default;
};

struct PairingResult {
  std::vector<MethodPair> pairs;  // sorted by (ipcSignature, helper)
  std::vector<std::string> directOnly;
};

// Throws ConfigError when registration or marker names are empty.
ServiceRegistry identify_services(const Corpus& corpus, const SeedList& seeds);

std::set<std::string> identify_helpers(const Corpus& corpus, const ServiceRegistry& registry,
                                       const SeedList& seeds, const CallbackTable& table,
                                       std::size_t maxDepth = 12);

PairingResult pair_methods(const Corpus& corpus, const ServiceRegistry& registry,
                           const std::set<std::string>& helpers,
                           const CallbackTable& table, std::size_t maxDepth = 12);

// Methods whose call graphs are searched for IPC reachability: every
// concrete method of a class folded into `helperClass`.
std::vector<std::string> helper_entry_methods(const Corpus& corpus, const std::string& helperClass);

}  // namespace helper_audit
