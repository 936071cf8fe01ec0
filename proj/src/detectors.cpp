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

#include "helper_audit/detectors.hpp"

#include <algorithm>

#include "helper_audit/error.hpp"

namespace helper_audit {

const char* to_string(EnforcementKind k) {
  switch (k) {
    case EnforcementKind::ParamValidation: return "paramValidation";
    case EnforcementKind::CallerStatus: return "callerStatus";
    case EnforcementKind::IdentityPassing: return "identityPassing";
    case EnforcementKind::EnvCheck: return "envCheck";
    case EnforcementKind::DupConstraint: return "dupConstraint";
    case EnforcementKind::IdentityCheck: return "identityCheck";
    case EnforcementKind::PermissionCheck: return "permissionCheck";
  }
  return "";
}

const char* to_string(Side s) { return s == Side::Helper ? "helper" : "service"; }

void EnforcementSet::add(EnforcementKind k, std::vector<Locus> evidence) {
  if (evidence.empty()) return;
  mechanisms[k].insert(evidence.begin(), evidence.end());
}

void EnforcementSet::merge(const EnforcementSet& o) {
  for (const auto& [k, loci] : o.mechanisms) mechanisms[k].insert(loci.begin(), loci.end());
  validatedParams.insert(o.validatedParams.begin(), o.validatedParams.end());
  identitiesPassed.insert(o.identitiesPassed.begin(), o.identitiesPassed.end());
  throwGuardedParams.insert(o.throwGuardedParams.begin(), o.throwGuardedParams.end());
  identityCoveredParams.insert(o.identityCoveredParams.begin(), o.identityCoveredParams.end());
  binderIdentityChecked = binderIdentityChecked || o.binderIdentityChecked;
  envGates.insert(o.envGates.begin(), o.envGates.end());
  for (const auto& e : o.escapeHazards) {
    if (std::find(escapeHazards.begin(), escapeHazards.end(), e) == escapeHazards.end()) escapeHazards.push_back(e);
  }
}

std::vector<std::string> DetectorContext::identity_access() const {
  auto out = seeds.identityAccess;
  out.insert(out.end(), mined.identityAccessMined.begin(), mined.identityAccessMined.end());
  return out;
}

std::vector<std::string> DetectorContext::identity_enforce() const {
  auto out = seeds.identityEnforce;
  out.insert(out.end(), mined.identityEnforceMined.begin(), mined.identityEnforceMined.end());
  return out;
}

EscapeConfig DetectorContext::escape_config() const {
  EscapeConfig c;
  c.collectionMutators = seeds.collectionMutators;
  for (const auto& e : table.entries) c.callbackRegistrations.insert(e.registration);
  return c;
}

std::optional<IdentityKind> identity_kind_of(const std::string& simpleName, const SeedList& seeds) {
  if (auto it = seeds.identityKinds.find(simpleName); it != seeds.identityKinds.end()) return it->second;
  auto tokens = tokenize_identifier(simpleName);
  static const std::vector<std::pair<std::string, IdentityKind>> order = {
      {"package", IdentityKind::PackageName}, {"userhandle", IdentityKind::UserHandle},
      {"ppid", IdentityKind::Ppid},           {"pid", IdentityKind::Pid},
      {"tid", IdentityKind::Tid},             {"gid", IdentityKind::Gid},
      {"uid", IdentityKind::Uid},             {"userid", IdentityKind::Uid},
      {"user", IdentityKind::Uid}};
  for (const auto& [token, kind] : order) {
    if (tokens.count(token)) return kind;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Statement-level helpers.

namespace {

bool branch_has(const FlatBody& flat, const FlatStatement& g, bool throwOnly) {
  for (std::size_t i = g.index + 1; i < g.end; ++i) {
    const Statement& s = *flat[i].stmt;
    if (s.as<Throw>()) return true;
    if (!throwOnly && s.as<Return>()) return true;
  }
  return false;
}

// Throws inside the guard whose type is in `handled`; Returns always count.
bool branch_has_handled(const FlatBody& flat, const FlatStatement& g, const std::vector<std::string>& handled) {
  for (std::size_t i = g.index + 1; i < g.end; ++i) {
    const Statement& s = *flat[i].stmt;
    if (s.as<Return>()) return true;
    if (const auto* t = s.as<Throw>()) {
      for (const auto& h : handled) {
        if (class_matches(t->exceptionType, h) || t->exceptionType == h) return true;
      }
    }
  }
  return false;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool gates(const FlatBody& flat, const FlatStatement& g, std::size_t site) {
  if (!g.stmt->as<If>() || g.index >= site) return false;
  if (g.contains(site)) return true;
  return g.end <= site && branch_has(flat, g, false);
}

bool gates_all(const FlatBody& flat, const FlatStatement& g, const std::vector<std::size_t>& sites) {
  if (sites.empty()) return false;
  for (auto s : sites) {
    if (!gates(flat, g, s)) return false;
  }
  return true;
}

std::vector<Operand> cond_operands(const If& branch) { return {branch.cond.left, branch.cond.right}; }

bool consumes(const Invoke& call, const std::set<std::string>& names) {
  if (call.receiver && mentions(names, *call.receiver)) return true;
  for (const auto& a : call.args) {
    if (mentions(names, a)) return true;
  }
  return false;
}

// Invoke statements (before `before`) whose result flows into operand `o`.
std::vector<std::size_t> feeding_calls(const FlatBody& flat, const AliasMap& aliases, const Operand& o,
                                       std::size_t before) {
  std::vector<std::size_t> out;
  if (!o.is_name()) return out;
  auto names = aliases.class_of(o.text);
  for (const auto& fs : flat) {
    if (fs.index >= before) break;
    const auto* call = fs.stmt->as<Invoke>();
    if (call && call->result && names.count(*call->result)) out.push_back(fs.index);
  }
  return out;
}

bool field_backed(const AliasMap& aliases, const Operand& o) {
  if (o.kind == Operand::Kind::Field) return true;
  if (o.kind != Operand::Kind::Variable) return false;
  for (const auto& n : aliases.class_of(o.text)) {
    if (n.find('.') != std::string::npos) return true;
  }
  return false;
}

std::string field_alias(const AliasMap& aliases, const std::string& var) {
  if (var.find('.') != std::string::npos) return var;
  for (const auto& n : aliases.class_of(var)) {
    if (n.find('.') != std::string::npos) return n;
  }
  return {};
}

const MethodDef* declared_callee(const Corpus& corpus, const Invoke& call) {
  auto parts = split_method_ref(call.target);
  if (!parts) return nullptr;
  const auto* m = corpus.lookup_any_ancestor(parts->className, parts->signature);
  return m ? m->def : nullptr;
}

bool returns_boolean(const Corpus& corpus, const Invoke& call) {
  const auto* def = declared_callee(corpus, call);
  return def && def->returnType == "boolean";
}

// Concrete corpus methods an invoke may run, excluding proxies.
std::vector<const Corpus::MethodEntry*> callees(const DetectorContext& ctx, const Invoke& call) {
  std::vector<const Corpus::MethodEntry*> out;
  for (const auto& ref : resolve_call(ctx.corpus, call, ctx.table, &ctx.registry.boundary)) {
    if (ctx.registry.boundary.proxies.count(ref)) continue;
    const auto* m = ctx.corpus.method(ref);
    if (m && !m->def->isAbstract && !m->def->isNative) out.push_back(m);
  }
  return out;
}

// True when `callee` throws under a guard on parameter `param`, directly or
// through further calls, within `depth` levels.
bool throw_validates(const DetectorContext& ctx, const Corpus::MethodEntry& callee, std::size_t param,
                     std::size_t depth, std::vector<Locus>& evidence) {
  if (depth == 0 || param >= callee.def->params.size()) return false;
  AliasMap aliases(callee.flat);
  auto names = aliases.class_of(callee.def->params[param].name);
  for (const auto& fs : callee.flat) {
    if (const auto* branch = fs.stmt->as<If>()) {
      bool onParam = false;
      for (const auto& o : cond_operands(*branch)) onParam = onParam || mentions(names, o);
      if (onParam && branch_has(callee.flat, fs, true)) {
        evidence.push_back(Locus{callee.ref, fs.index});
        return true;
      }
    } else if (const auto* call = fs.stmt->as<Invoke>()) {
      for (std::size_t k = 0; k < call->args.size(); ++k) {
        if (!mentions(names, call->args[k])) continue;
        for (const auto* next : callees(ctx, *call)) {
          if (next->ref == callee.ref) continue;
          if (throw_validates(ctx, *next, k, depth - 1, evidence)) return true;
        }
      }
    }
  }
  return false;
}

struct GuardHit {
  bool hit = false;
  bool throws = false;
  std::vector<Locus> evidence;
};

// Does a guard of `sites` in method `m` validate the value carried by
// `names`? Rules: the value is a condition operand, or feeds a boolean call
// whose result is a condition operand. `throwOnly` restricts the failing
// branch to Throw (used for deeper methods).
GuardHit guard_on_value(const DetectorContext& ctx, const Corpus::MethodEntry& m, const AliasMap& aliases,
                        const std::set<std::string>& names, const std::vector<std::size_t>& sites) {
  GuardHit out;
  for (const auto& fs : m.flat) {
    const auto* branch = fs.stmt->as<If>();
    if (!branch || !gates_all(m.flat, fs, sites)) continue;
    bool validated = false;
    std::vector<Locus> ev{Locus{m.ref, fs.index}};
    for (const auto& o : cond_operands(*branch)) {
      if (mentions(names, o)) validated = true;
      for (auto c : feeding_calls(m.flat, aliases, o, fs.index)) {
        const auto* call = m.flat[c].stmt->as<Invoke>();
        if (consumes(*call, names) && returns_boolean(ctx.corpus, *call)) {
          validated = true;
          ev.push_back(Locus{m.ref, c});
        }
      }
    }
    if (!validated) continue;
    out.hit = true;
    out.throws = out.throws || branch_has(m.flat, fs, true);
    out.evidence.insert(out.evidence.end(), ev.begin(), ev.end());
  }
  return out;
}

struct Frame {
  const Corpus::MethodEntry* method;
  std::vector<std::size_t> sites;  // calls to the next chain method
};

std::vector<Frame> chain_frames(const DetectorContext& ctx, const CallChain& chain) {
  std::vector<Frame> out;
  for (std::size_t i = 0; i + 1 < chain.methods.size(); ++i) {
    const auto* m = ctx.corpus.method(chain.methods[i]);
    if (m) out.push_back(Frame{m, chain.callSites[i]});
  }
  return out;
}

std::size_t ipc_arity(const DetectorContext& ctx, const CallChain& chain) {
  const auto* m = ctx.corpus.method(chain.methods.back());
  return m ? m->def->params.size() : 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Helper side.

ParamValidationResult detect_param_validation(const DetectorContext& ctx, const CallChain& chain) {
  ParamValidationResult out;
  if (chain.methods.size() < 2) return out;
  auto arity = ipc_arity(ctx, chain);
  for (std::size_t p = 0; p < arity; ++p) {
    TaintTrace trace;
    try {
      trace = backward_track(ctx.corpus, chain, p);
    } catch (const Error&) {
      continue;
    }
    for (const auto& frame : trace.frames) {
      const auto& m = ctx.corpus.require_method(frame.method);
      AliasMap aliases(m.flat);
      auto hit = guard_on_value(ctx, m, aliases, frame.names, {frame.cutoff});
      if (hit.hit) {
        out.validated.insert(p);
        if (hit.throws) out.throwGuarded.insert(p);
        out.evidence.insert(out.evidence.end(), hit.evidence.begin(), hit.evidence.end());
      }
      // Validation delegated to a callee that throws.
      for (const auto& fs : m.flat) {
        if (fs.index >= frame.cutoff) break;
        const auto* call = fs.stmt->as<Invoke>();
        if (!call) continue;
        for (std::size_t k = 0; k < call->args.size(); ++k) {
          if (!mentions(frame.names, call->args[k])) continue;
          for (const auto* callee : callees(ctx, *call)) {
            std::vector<Locus> ev{Locus{m.ref, fs.index}};
            if (throw_validates(ctx, *callee, k, ctx.maxDepth, ev)) {
              out.validated.insert(p);
              out.throwGuarded.insert(p);
              out.evidence.insert(out.evidence.end(), ev.begin(), ev.end());
            }
          }
        }
      }
    }
  }
  return out;
}

std::vector<Locus> detect_caller_status(const DetectorContext& ctx, const CallChain& chain) {
  std::vector<Locus> out;
  for (const auto& frame : chain_frames(ctx, chain)) {
    const auto& m = *frame.method;
    AliasMap aliases(m.flat);
    for (const auto& fs : m.flat) {
      const auto* branch = fs.stmt->as<If>();
      if (!branch || !gates_all(m.flat, fs, frame.sites)) continue;
      for (const auto& o : cond_operands(*branch)) {
        for (auto c : feeding_calls(m.flat, aliases, o, fs.index)) {
          const auto* call = m.flat[c].stmt->as<Invoke>();
          if (!name_matches_any(call->target, ctx.seeds.statusApis)) continue;
          out.push_back(Locus{m.ref, c});
          out.push_back(Locus{m.ref, fs.index});
        }
      }
    }
  }
  return out;
}

std::set<std::pair<IdentityKind, std::size_t>> detect_identity_passing(const DetectorContext& ctx,
                                                                       const CallChain& chain) {
  std::set<std::pair<IdentityKind, std::size_t>> out;
  if (chain.methods.size() < 2) return out;
  auto access = ctx.identity_access();
  auto arity = ipc_arity(ctx, chain);
  for (std::size_t p = 0; p < arity; ++p) {
    TaintTrace trace;
    try {
      trace = backward_track(ctx.corpus, chain, p);
    } catch (const Error&) {
      continue;
    }
    if (trace.origin.kind != TraceOrigin::Kind::CallResult) continue;
    if (!name_matches_any(trace.origin.name, access)) continue;
    if (auto kind = identity_kind_of(simple_name(trace.origin.name), ctx.seeds)) out.insert({*kind, p});
  }
  return out;
}

EnvCheckResult detect_env_check(const DetectorContext& ctx, const CallChain& chain) {
  EnvCheckResult out;
  auto target = ctx.registry.ipc_method_of_proxy(chain.methods.back());
  if (target.empty()) return out;
  auto iface = ctx.registry.interface_of(target);
  for (const auto& frame : chain_frames(ctx, chain)) {
    const auto& m = *frame.method;
    AliasMap aliases(m.flat);
    for (const auto& fs : m.flat) {
      const auto* branch = fs.stmt->as<If>();
      if (!branch || !gates_all(m.flat, fs, frame.sites)) continue;
      for (const auto& o : cond_operands(*branch)) {
        for (auto c : feeding_calls(m.flat, aliases, o, fs.index)) {
          const auto* call = m.flat[c].stmt->as<Invoke>();
          auto it = ctx.registry.boundary.callToProxy.find(call->target);
          if (it == ctx.registry.boundary.callToProxy.end()) continue;
          auto gate = ctx.registry.ipc_method_of_proxy(it->second);
          if (gate.empty() || gate == target || ctx.registry.interface_of(gate) != iface) continue;
          const auto* decl = ctx.corpus.method(gate);
          if (!decl || decl->def->returnType != "boolean") continue;
          out.gates.insert(gate);
          out.evidence.push_back(Locus{m.ref, c});
          out.evidence.push_back(Locus{m.ref, fs.index});
        }
      }
    }
  }
  return out;
}

std::vector<Locus> detect_dup_constraint(const DetectorContext& ctx, const CallChain& chain) {
  std::vector<Locus> out;
  for (const auto& frame : chain_frames(ctx, chain)) {
    const auto& m = *frame.method;
    AliasMap aliases(m.flat);

    // Variant B needs a listener parameter added to a field collection.
    std::map<std::string, std::size_t> listenerCollections;  // field -> add site
    for (const auto& fs : m.flat) {
      const auto* call = fs.stmt->as<Invoke>();
      if (!call || !call->receiver || !name_matches_any(call->target, ctx.seeds.collectionMutators)) continue;
      for (const auto& param : m.def->params) {
        bool listener = false;
        for (const auto& t : ctx.seeds.listenerTypes) listener = listener || ends_with(param.type, t);
        if (!listener || !consumes(*call, aliases.class_of(param.name))) continue;
        auto field = field_alias(aliases, *call->receiver);
        if (!field.empty()) listenerCollections.emplace(field, fs.index);
      }
    }

    for (const auto& fs : m.flat) {
      const auto* branch = fs.stmt->as<If>();
      if (!branch || !gates_all(m.flat, fs, frame.sites)) continue;
      const auto& l = branch->cond.left;
      const auto& r = branch->cond.right;
      // Variant A: field-backed counter against an integer constant.
      if ((field_backed(aliases, l) && r.kind == Operand::Kind::Integer) ||
          (field_backed(aliases, r) && l.kind == Operand::Kind::Integer)) {
        out.push_back(Locus{m.ref, fs.index});
        continue;
      }
      for (const auto& o : cond_operands(*branch)) {
        for (auto c : feeding_calls(m.flat, aliases, o, fs.index)) {
          const auto* call = m.flat[c].stmt->as<Invoke>();
          if (!call->receiver || !name_matches_any(call->target, ctx.seeds.collectionQueries)) continue;
          auto it = listenerCollections.find(field_alias(aliases, *call->receiver));
          if (it == listenerCollections.end()) continue;
          out.push_back(Locus{m.ref, it->second});
          out.push_back(Locus{m.ref, c});
          out.push_back(Locus{m.ref, fs.index});
        }
      }
    }
  }
  return out;
}

EnforcementSet detect_helper_enforcements(const DetectorContext& ctx, const MethodPair& pair) {
  EnforcementSet set;
  set.side = Side::Helper;
  auto g = build_graph(ctx.corpus, pair.helper, ctx.table, ctx.maxDepth, &ctx.registry.boundary);
  auto chains = enumerate_chains(g, ctx.chainLimit);
  for (const auto& chain : chains.chains) {
    if (chain.methods.back() != pair.proxy) continue;
    auto pv = detect_param_validation(ctx, chain);
    set.add(EnforcementKind::ParamValidation, pv.evidence);
    set.validatedParams.insert(pv.validated.begin(), pv.validated.end());
    set.throwGuardedParams.insert(pv.throwGuarded.begin(), pv.throwGuarded.end());
    set.add(EnforcementKind::CallerStatus, detect_caller_status(ctx, chain));
    auto ids = detect_identity_passing(ctx, chain);
    if (!ids.empty()) {
      set.identitiesPassed.insert(ids.begin(), ids.end());
      const auto& last = ctx.corpus.require_method(chain.methods[chain.methods.size() - 2]);
      set.add(EnforcementKind::IdentityPassing, {Locus{last.ref, chain.callSites.back().front()}});
    }
    auto env = detect_env_check(ctx, chain);
    set.add(EnforcementKind::EnvCheck, env.evidence);
    set.envGates.insert(env.gates.begin(), env.gates.end());
    set.add(EnforcementKind::DupConstraint, detect_dup_constraint(ctx, chain));
  }
  return set;
}

// ---------------------------------------------------------------------------
// Service side.

namespace {

constexpr int kBinder = -1;

bool is_permission_check(const std::string& simple) {
  auto starts = [&](const char* p) { return simple.rfind(p, 0) == 0; };
  return (starts("enforce") || starts("check")) && ends_with(simple, "Permission");
}

struct ServiceScan {
  const DetectorContext& ctx;
  std::vector<std::string> enforce;
  EnforcementSet& set;
  std::set<std::pair<std::string, std::set<int>>> visited;

  // Tags of every name in `m`: IPC positions from `paramTags`, and kBinder
  // for results of Binder identity sources.
  std::map<std::string, std::set<int>> tag_names(const Corpus::MethodEntry& m, const AliasMap& aliases,
                                                 const std::map<std::string, std::set<int>>& paramTags) {
    std::map<std::string, std::set<int>> seedTags = paramTags;
    for (const auto& fs : m.flat) {
      const auto* call = fs.stmt->as<Invoke>();
      if (call && call->result && name_matches_any(call->target, ctx.seeds.binderIdentitySources)) {
        seedTags[*call->result].insert(kBinder);
      }
    }
    std::map<std::string, std::set<int>> out;
    for (const auto& [name, tags] : seedTags) {
      for (const auto& alias : aliases.class_of(name)) out[alias].insert(tags.begin(), tags.end());
    }
    return out;
  }

  static std::set<int> tags_of(const std::map<std::string, std::set<int>>& tags, const Operand& o) {
    if (!o.is_name()) return {};
    std::set<int> out;
    if (auto it = tags.find(o.text); it != tags.end()) out = it->second;
    if (auto it = tags.find(root_of(o.text)); it != tags.end() && root_of(o.text) != "this") {
      out.insert(it->second.begin(), it->second.end());
    }
    return out;
  }

  void scan(const Corpus::MethodEntry& m, const std::map<std::string, std::set<int>>& paramTags,
            std::size_t depth) {
    std::set<int> all;
    for (const auto& [n, t] : paramTags) all.insert(t.begin(), t.end());
    if (!visited.insert({m.ref, all}).second) return;
    AliasMap aliases(m.flat);
    auto tags = tag_names(m, aliases, paramTags);
    for (const auto& fs : m.flat) {
      const auto* call = fs.stmt->as<Invoke>();
      if (!call) continue;
      std::set<int> consumed;
      if (call->receiver) {
        auto t = tags_of(tags, Operand::name(*call->receiver));
        consumed.insert(t.begin(), t.end());
      }
      std::vector<std::set<int>> argTags;
      for (const auto& a : call->args) {
        argTags.push_back(tags_of(tags, a));
        consumed.insert(argTags.back().begin(), argTags.back().end());
      }
      auto simple = simple_name(call->target);
      if (is_permission_check(simple)) set.add(EnforcementKind::PermissionCheck, {Locus{m.ref, fs.index}});
      if (name_matches_any(call->target, enforce)) {
        // Check functions named after the calling process read the Binder
        // identity themselves.
        bool implicitBinder = tokenize_identifier(simple).count("calling") != 0;
        if (!consumed.empty() || implicitBinder) {
          set.add(EnforcementKind::IdentityCheck, {Locus{m.ref, fs.index}});
          for (int t : consumed) {
            if (t == kBinder) {
              set.binderIdentityChecked = true;
            } else {
              set.identityCoveredParams.insert(static_cast<std::size_t>(t));
              set.validatedParams.insert(static_cast<std::size_t>(t));
            }
          }
          if (implicitBinder) set.binderIdentityChecked = true;
        }
        continue;
      }
      if (consumed.empty() || depth + 1 >= ctx.maxDepth) continue;
      for (const auto* callee : callees(ctx, *call)) {
        std::map<std::string, std::set<int>> next;
        for (std::size_t k = 0; k < argTags.size() && k < callee->def->params.size(); ++k) {
          if (!argTags[k].empty()) next[callee->def->params[k].name] = argTags[k];
        }
        if (!next.empty()) scan(*callee, next, depth + 1);
      }
    }
  }
};

}  // namespace

EnforcementSet detect_service_enforcements(const DetectorContext& ctx, const std::string& serviceMethod) {
  const auto& m = ctx.corpus.require_method(serviceMethod);
  EnforcementSet set;
  set.side = Side::Service;
  AliasMap aliases(m.flat);
  const auto& params = m.def->params;

  // Identity and permission checks, following tagged values into callees.
  std::map<std::string, std::set<int>> paramTags;
  for (std::size_t p = 0; p < params.size(); ++p) paramTags[params[p].name] = {static_cast<int>(p)};
  ServiceScan scan{ctx, ctx.identity_enforce(), set, {}};
  scan.scan(m, paramTags, 0);

  std::vector<std::set<std::string>> paramNames;
  for (const auto& p : params) paramNames.push_back(aliases.class_of(p.name));

  for (const auto& fs : m.flat) {
    const auto* branch = fs.stmt->as<If>();
    if (!branch) continue;
    bool terminating = branch_has(m.flat, fs, false);
    bool handled = branch_has_handled(m.flat, fs, ctx.seeds.handledExceptions);
    bool throws = branch_has(m.flat, fs, true);
    Locus here{m.ref, fs.index};

    for (const auto& o : cond_operands(*branch)) {
      auto feeders = feeding_calls(m.flat, aliases, o, fs.index);
      for (std::size_t p = 0; p < params.size(); ++p) {
        bool onParam = mentions(paramNames[p], o);
        for (auto c : feeders) {
          const auto* call = m.flat[c].stmt->as<Invoke>();
          onParam = onParam || (consumes(*call, paramNames[p]) && returns_boolean(ctx.corpus, *call));
        }
        if (onParam && handled) {
          set.validatedParams.insert(p);
          if (throws) set.throwGuardedParams.insert(p);
          set.add(EnforcementKind::ParamValidation, {here});
        }
      }
      if (!terminating) continue;
      for (auto c : feeders) {
        const auto* call = m.flat[c].stmt->as<Invoke>();
        Locus at{m.ref, c};
        if (name_matches_any(call->target, ctx.seeds.statusApis)) {
          set.add(EnforcementKind::CallerStatus, {at, here});
          continue;
        }
        bool onAnyParam = false;
        for (const auto& names : paramNames) onAnyParam = onAnyParam || consumes(*call, names);
        if (!onAnyParam && returns_boolean(ctx.corpus, *call)) set.add(EnforcementKind::EnvCheck, {at, here});
        if (name_matches_any(call->target, ctx.seeds.collectionQueries)) {
          set.add(EnforcementKind::DupConstraint, {at, here});
        }
      }
    }
    if (terminating) {
      const auto& l = branch->cond.left;
      const auto& r = branch->cond.right;
      if ((field_backed(aliases, l) && r.kind == Operand::Kind::Integer) ||
          (field_backed(aliases, r) && l.kind == Operand::Kind::Integer)) {
        set.add(EnforcementKind::DupConstraint, {here});
      }
    }
  }

  // Validation delegated to callees that throw.
  for (const auto& fs : m.flat) {
    const auto* call = fs.stmt->as<Invoke>();
    if (!call) continue;
    for (std::size_t k = 0; k < call->args.size(); ++k) {
      for (std::size_t p = 0; p < params.size(); ++p) {
        if (!mentions(paramNames[p], call->args[k])) continue;
        for (const auto* callee : callees(ctx, *call)) {
          std::vector<Locus> ev{Locus{m.ref, fs.index}};
          if (throw_validates(ctx, *callee, k, ctx.maxDepth, ev)) {
            set.validatedParams.insert(p);
            set.throwGuardedParams.insert(p);
            set.add(EnforcementKind::ParamValidation, ev);
          }
        }
      }
    }
  }

  auto escapeConfig = ctx.escape_config();
  for (const auto& p : params) {
    auto report = escape_analysis(*m.def, p.name, escapeConfig);
    if (report.escapes && !set.validatedParams.count(report.position)) set.escapeHazards.push_back(report);
  }
  return set;
}

}  // namespace helper_audit
