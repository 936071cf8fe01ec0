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

// Method-level call graphs built breadth-first from one entry, with CHA for
// virtual dispatch and a callback table for implicit calls.

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "helper_audit/ir.hpp"

namespace helper_audit {

struct CallbackTable {
  std::vector<CallbackEntry> entries;

  // Corpus-embedded edges plus the extra ones, deduplicated and sorted.
  static CallbackTable merged(const Corpus& corpus, const std::vector<CallbackEntry>& extra);
};

// Where client code crosses into another process. A call whose declared
// target is in `callToProxy` (a method of an IPC interface, its stub or its
// proxy) resolves to the proxy only, and proxies are never expanded.
struct IpcBoundary {
  std::map<std::string, std::string> callToProxy;
  std::set<std::string> proxies;
};

struct CallEdge {
  std::string caller;
  std::size_t callSite = 0;  // depth-first statement index in caller
  std::string callee;

  friend auto operator<=>(const CallEdge&, const CallEdge&) = default;
  friend bool operator==(const CallEdge&, const CallEdge&) = default;
};

struct CallGraph {
  std::string entry;
  std::set<std::string> nodes;
  std::set<CallEdge> edges;
  std::set<std::string> targets;  // proxy methods reached

  // Distinct callees of `node`, sorted.
  std::vector<std::string> successors(const std::string& node) const;
};

// Callees of one invoke: the CHA resolution plus callback implementations.
// Externals and undeclared constructors resolve to the raw target string.
std::vector<std::string> resolve_call(const Corpus& corpus, const Invoke& call,
                                      const CallbackTable& table, const IpcBoundary* boundary);

// Throws UnknownMethod when the entry is not declared, InvalidConfig when
// maxDepth is 0.
CallGraph build_graph(const Corpus& corpus, const std::string& entry, const CallbackTable& table,
                      std::size_t maxDepth = 12, const IpcBoundary* boundary = nullptr);

struct CallChain {
  std::vector<std::string> methods;
  // callSites[i] lists the statements of methods[i] that call methods[i + 1],
  // ascending.
  std::vector<std::vector<std::size_t>> callSites;

  friend bool operator==(const CallChain&, const CallChain&) = default;
};

struct ChainEnumeration {
  std::vector<CallChain> chains;
  bool truncated = false;
};

// Acyclic entry-to-target paths in lexicographic order of their node
// sequences, at most `limit` of them.
ChainEnumeration enumerate_chains(const CallGraph& g, std::size_t limit = 256);

struct InvokeSite {
  std::size_t index = 0;
  const Invoke* invoke = nullptr;
};

// Invoke statements of the method body itself, depth-first. Throws UnknownMethod.
std::vector<InvokeSite> service_entry_invokes(const Corpus& corpus, const std::string& method);

}  // namespace helper_audit
