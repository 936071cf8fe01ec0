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

#include "helper_audit/callgraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "helper_audit/error.hpp"

namespace helper_audit {

CallbackTable CallbackTable::merged(const Corpus& corpus, const std::vector<CallbackEntry>& extra) {
  std::set<CallbackEntry> all(corpus.callback_edges().begin(), corpus.callback_edges().end());
  all.insert(extra.begin(), extra.end());
  return CallbackTable{std::vector<CallbackEntry>(all.begin(), all.end())};
}

std::vector<std::string> CallGraph::successors(const std::string& node) const {
  std::set<std::string> out;
  auto it = edges.lower_bound(CallEdge{node, 0, ""});
  for (; it != edges.end() && it->caller == node; ++it) out.insert(it->callee);
  return {out.begin(), out.end()};
}

namespace {

// Concrete implementations of `signature` on every concrete subtype of
// `declared` (class hierarchy analysis).
void cha_targets(const Corpus& corpus, const std::string& declared, const std::string& signature,
                 std::set<std::string>& out) {
  const auto& h = corpus.hierarchy();
  if (!h.contains(declared)) return;
  for (const auto& sub : h.subtypes_of(declared)) {
    const ClassDef* cls = corpus.find_class(sub);
    if (!cls || !cls->is_concrete()) continue;
    if (const auto* impl = corpus.lookup_superclass_chain(sub, signature, true)) {
      out.insert(impl->ref);
    }
  }
}

}  // namespace

std::vector<std::string> resolve_call(const Corpus& corpus, const Invoke& call,
                                      const CallbackTable& table, const IpcBoundary* boundary) {
  std::set<std::string> out;
  auto direct = [&]() {
    if (boundary) {
      if (auto it = boundary->callToProxy.find(call.target); it != boundary->callToProxy.end()) {
        out.insert(it->second);
        return;
      }
    }
    auto parts = split_method_ref(call.target);
    if (!parts || !corpus.find_class(parts->className)) {
      out.insert(call.target);
      return;
    }
    if (call.dispatch == Dispatch::Static || call.dispatch == Dispatch::Special ||
        parts->name == "<init>") {
      const auto* m = corpus.lookup_superclass_chain(parts->className, parts->signature, false);
      if (!m) m = corpus.lookup_any_ancestor(parts->className, parts->signature);
      out.insert(m ? m->ref : call.target);
      return;
    }
    cha_targets(corpus, parts->className, parts->signature, out);
    if (out.empty() && !corpus.lookup_any_ancestor(parts->className, parts->signature)) {
      // Declared only on an external supertype: opaque leaf.
      out.insert(call.target);
    }
  };
  direct();
  for (const auto& cb : table.entries) {
    if (cb.registration == call.target) cha_targets(corpus, cb.interface, cb.callback, out);
  }
  return {out.begin(), out.end()};
}

CallGraph build_graph(const Corpus& corpus, const std::string& entry, const CallbackTable& table,
                      std::size_t maxDepth, const IpcBoundary* boundary) {
  if (maxDepth < 1) throw InvalidConfig("maxDepth must be at least 1");
  corpus.require_method(entry);
  CallGraph g;
  g.entry = entry;
  g.nodes.insert(entry);
  std::deque<std::pair<std::string, std::size_t>> queue{{entry, 0}};
  std::set<std::string> visited{entry};
  while (!queue.empty()) {
    auto [node, depth] = queue.front();
    queue.pop_front();
    if (depth >= maxDepth) continue;
    if (boundary && boundary->proxies.count(node)) continue;
    const auto* m = corpus.method(node);
    if (!m || m->def->isNative || m->def->isAbstract) continue;
    for (const auto& fs : m->flat) {
      const auto* call = fs.stmt->as<Invoke>();
      if (!call) continue;
      for (const auto& callee : resolve_call(corpus, *call, table, boundary)) {
        g.edges.insert(CallEdge{node, fs.index, callee});
        g.nodes.insert(callee);
        if (boundary && boundary->proxies.count(callee)) g.targets.insert(callee);
        if (visited.insert(callee).second) queue.emplace_back(callee, depth + 1);
      }
    }
  }
  return g;
}

ChainEnumeration enumerate_chains(const CallGraph& g, std::size_t limit) {
  ChainEnumeration result;
  if (g.targets.empty() || limit == 0) {
    result.truncated = !g.targets.empty() && limit == 0;
    return result;
  }

  std::map<std::string, std::vector<std::string>> succ;
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> sites;
  std::map<std::string, std::set<std::string>> pred;
  for (const auto& e : g.edges) {
    sites[{e.caller, e.callee}].push_back(e.callSite);
    pred[e.callee].insert(e.caller);
  }
  for (const auto& n : g.nodes) succ[n] = g.successors(n);

  // Only walk nodes that can still reach a target.
  std::set<std::string> useful(g.targets.begin(), g.targets.end());
  std::deque<std::string> work(g.targets.begin(), g.targets.end());
  while (!work.empty()) {
    auto n = work.front();
    work.pop_front();
    for (const auto& p : pred[n]) {
      if (useful.insert(p).second) work.push_back(p);
    }
  }

  std::vector<std::string> path{g.entry};
  std::set<std::string> onPath{g.entry};
  bool stop = false;
  std::function<void(const std::string&)> dfs = [&](const std::string& node) {
    for (const auto& next : succ[node]) {
      if (stop) return;
      if (onPath.count(next) || !useful.count(next)) continue;
      path.push_back(next);
      if (g.targets.count(next)) {
        if (result.chains.size() == limit) {
          result.truncated = true;
          stop = true;
        } else {
          CallChain chain;
          chain.methods = path;
          for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            auto s = sites[{path[i], path[i + 1]}];
            std::sort(s.begin(), s.end());
            chain.callSites.push_back(std::move(s));
          }
          result.chains.push_back(std::move(chain));
        }
      } else {
        onPath.insert(next);
        dfs(next);
        onPath.erase(next);
      }
      path.pop_back();
    }
  };
  if (!g.targets.count(g.entry)) dfs(g.entry);
  return result;
}

std::vector<InvokeSite> service_entry_invokes(const Corpus& corpus, const std::string& method) {
  const auto& m = corpus.require_method(method);
  std::vector<InvokeSite> out;
  for (const auto& fs : m.flat) {
    if (const auto* call = fs.stmt->as<Invoke>()) out.push_back(InvokeSite{fs.index, call});
  }
  return out;
}

}  // namespace helper_audit
