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

#include "helper_audit/service_model.hpp"

#include <algorithm>
#include <tuple>

#include "helper_audit/error.hpp"

namespace helper_audit {

std::string ServiceRegistry::interface_of(const std::string& ipcMethod) const {
  auto parts = split_method_ref(ipcMethod);
  return parts ? parts->className : std::string();
}

std::string ServiceRegistry::ipc_method_of_proxy(const std::string& proxy) const {
  for (const auto& [ipc, p] : proxyMethods) {
    if (p == proxy) return ipc;
  }
  return {};
}

namespace {

// Static type of `var` at its first definition in `m`, or empty if unknown.
std::string static_type(const Corpus& corpus, const Corpus::MethodEntry& m, const std::string& var,
                        int budget = 8) {
  if (budget == 0) return {};
  if (var == "this") return m.owner->name;
  if (auto idx = m.def->param_index(var)) return m.def->params[*idx].type;
  for (const auto& fs : m.flat) {
    if (const auto* call = fs.stmt->as<Invoke>()) {
      if (call->result != var) continue;
      auto parts = split_method_ref(call->target);
      if (!parts) return {};
      if (parts->name == "<init>") return parts->className;
      if (const auto* callee = corpus.lookup_any_ancestor(parts->className, parts->signature)) {
        return callee->def->returnType;
      }
      return {};
    }
    if (const auto* a = fs.stmt->as<Assign>()) {
      if (a->lhs != var) continue;
      const auto* o = std::get_if<Operand>(&a->rhs);
      if (o && o->kind == Operand::Kind::Variable) return static_type(corpus, m, o->text, budget - 1);
      return {};
    }
  }
  return {};
}

bool matches_all_markers(const Corpus& corpus, const std::string& cls,
                         const std::vector<std::string>& markers) {
  const auto& supers = corpus.hierarchy().supertypes_of(cls);
  for (const auto& marker : markers) {
    bool found = false;
    for (const auto& s : supers) found = found || class_matches(s, marker);
    if (!found) return false;
  }
  return true;
}

bool is_marker(const std::string& cls, const std::vector<std::string>& markers) {
  for (const auto& marker : markers) {
    if (class_matches(cls, marker)) return true;
  }
  return false;
}

struct HelperScan {
  // entry method -> reached proxy methods
  std::map<std::string, std::set<std::string>> reached;
};

HelperScan scan_helper_class(const Corpus& corpus, const ServiceRegistry& registry,
                             const std::string& helperClass, const CallbackTable& table,
                             std::size_t maxDepth) {
  HelperScan scan;
  for (const auto& entry : helper_entry_methods(corpus, helperClass)) {
    auto g = build_graph(corpus, entry, table, maxDepth, &registry.boundary);
    if (!g.targets.empty()) scan.reached[entry] = g.targets;
  }
  return scan;
}

std::vector<std::string> candidate_helper_classes(const Corpus& corpus,
                                                  const ServiceRegistry& registry,
                                                  const SeedList& seeds) {
  std::set<std::string> out;
  for (const auto& c : corpus.classes()) {
    auto top = corpus.top_level_of(c.name);
    bool prefixed = false;
    for (const auto& p : seeds.helperPackagePrefixes) prefixed = prefixed || top.rfind(p, 0) == 0;
    if (!prefixed || !corpus.find_class(top)) continue;
    if (registry.ipcInterfaces.count(top) || registry.stubClasses.count(top) ||
        registry.proxyClasses.count(top) || registry.services.count(top)) {
      continue;
    }
    out.insert(top);
  }
  return {out.begin(), out.end()};
}

}  // namespace

ServiceRegistry identify_services(const Corpus& corpus, const SeedList& seeds) {
  if (seeds.registrationMethods.empty()) throw ConfigError("no service registration methods configured");
  if (seeds.stubMarkers.empty()) throw ConfigError("no stub marker interfaces configured");

  ServiceRegistry reg;
  const auto& h = corpus.hierarchy();
  for (const auto& ref : corpus.method_refs()) {
    const auto& m = *corpus.method(ref);
    for (const auto& fs : m.flat) {
      const auto* call = fs.stmt->as<Invoke>();
      if (!call || !name_matches_any(call->target, seeds.registrationMethods)) continue;
      for (const auto& arg : call->args) {
        if (arg.kind != Operand::Kind::Variable) continue;
        auto type = static_type(corpus, m, arg.text);
        const ClassDef* cls = type.empty() ? nullptr : corpus.find_class(type);
        if (!cls) continue;
        // A registered object of abstract static type stands for its
        // concrete subtypes.
        if (cls->is_concrete()) {
          reg.services.insert(type);
        } else {
          for (const auto& sub : h.subtypes_of(type)) {
            const ClassDef* sc = corpus.find_class(sub);
            if (sc && sc->is_concrete()) reg.services.insert(sub);
          }
        }
      }
    }
  }

  std::set<std::string> bothMarkers;
  for (const auto& c : corpus.classes()) {
    if (c.kind == ClassKind::Interface || is_marker(c.name, seeds.stubMarkers)) continue;
    if (matches_all_markers(corpus, c.name, seeds.stubMarkers)) bothMarkers.insert(c.name);
  }
  for (const auto& stub : bothMarkers) {
    if (!reg.services.count(stub)) reg.stubClasses.insert(stub);
    for (const auto& s : h.supertypes_of(stub)) {
      const ClassDef* sc = corpus.find_class(s);
      if (!sc || sc->kind != ClassKind::Interface || is_marker(s, seeds.stubMarkers)) continue;
      bool extendsMarker = false;
      for (const auto& ss : h.supertypes_of(s)) extendsMarker = extendsMarker || is_marker(ss, seeds.stubMarkers);
      if (extendsMarker) reg.ipcInterfaces.insert(s);
    }
  }
  for (const auto& c : corpus.classes()) {
    if (!c.is_concrete() || bothMarkers.count(c.name)) continue;
    for (const auto& iface : reg.ipcInterfaces) {
      if (h.is_subtype(c.name, iface)) reg.proxyClasses.insert(c.name);
    }
  }

  for (const auto& iface : reg.ipcInterfaces) {
    const ClassDef* ic = corpus.find_class(iface);
    for (const auto& m : ic->methods) {
      auto ipc = make_method_ref(iface, m.signature);
      std::string proxy;
      for (const auto& p : reg.proxyClasses) {
        if (!h.is_subtype(p, iface)) continue;
        if (const auto* impl = corpus.lookup_superclass_chain(p, m.signature, true)) {
          proxy = impl->ref;
          break;
        }
      }
      for (const auto& s : reg.services) {
        if (!h.is_subtype(s, iface)) continue;
        if (const auto* impl = corpus.lookup_superclass_chain(s, m.signature, true)) {
          reg.stubMethods[ipc] = impl->ref;
          if (impl->def->isNative) reg.nativeStubs.insert(ipc);
          break;
        }
      }
      if (proxy.empty()) continue;
      reg.proxyMethods[ipc] = proxy;
      reg.boundary.proxies.insert(proxy);
      reg.boundary.callToProxy[ipc] = proxy;
      for (const auto& cls : reg.stubClasses) {
        if (h.is_subtype(cls, iface)) reg.boundary.callToProxy[make_method_ref(cls, m.signature)] = proxy;
      }
      for (const auto& cls : reg.proxyClasses) {
        if (h.is_subtype(cls, iface)) reg.boundary.callToProxy[make_method_ref(cls, m.signature)] = proxy;
      }
    }
  }
  return reg;
}

std::vector<std::string> helper_entry_methods(const Corpus& corpus, const std::string& helperClass) {
  std::vector<std::string> out;
  for (const auto& c : corpus.classes()) {
    if (corpus.top_level_of(c.name) != helperClass) continue;
    for (const auto& m : c.methods) {
      if (m.isAbstract || m.isNative) continue;
      out.push_back(make_method_ref(c.name, m.signature));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::set<std::string> identify_helpers(const Corpus& corpus, const ServiceRegistry& registry,
                                       const SeedList& seeds, const CallbackTable& table,
                                       std::size_t maxDepth) {
  std::set<std::string> out;
  for (const auto& cls : candidate_helper_classes(corpus, registry, seeds)) {
    if (!scan_helper_class(corpus, registry, cls, table, maxDepth).reached.empty()) out.insert(cls);
  }
  return out;
}

PairingResult pair_methods(const Corpus& corpus, const ServiceRegistry& registry,
                           const std::set<std::string>& helpers,
                           const CallbackTable& table, std::size_t maxDepth) {
  PairingResult result;
  std::set<std::string> paired;
  for (const auto& cls : helpers) {
    auto scan = scan_helper_class(corpus, registry, cls, table, maxDepth);
    for (const auto& [entry, proxies] : scan.reached) {
      for (const auto& proxy : proxies) {
        auto ipc = registry.ipc_method_of_proxy(proxy);
        auto impl = registry.stubMethods.find(ipc);
        if (ipc.empty() || impl == registry.stubMethods.end()) continue;
        MethodPair p;
        p.helper = entry;
        p.ipcSignature = ipc;
        p.service = impl->second;
        p.helperClass = cls;
        p.proxy = proxy;
        p.native = registry.nativeStubs.count(ipc) != 0;
        result.pairs.push_back(std::move(p));
        paired.insert(ipc);
      }
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end(), [](const MethodPair& a, const MethodPair& b) {
    return std::tie(a.ipcSignature, a.helper) < std::tie(b.ipcSignature, b.helper);
  });
  for (const auto& [ipc, impl] : registry.stubMethods) {
    if (!paired.count(ipc)) result.directOnly.push_back(ipc);
  }
  return result;
}

}  // namespace helper_audit
