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

#include "helper_audit/dataflow.hpp"

#include <algorithm>

#include "helper_audit/error.hpp"
#include "helper_audit/seeds.hpp"

namespace helper_audit {

namespace {

void add_use(DefUseIndex& idx, const std::string& name, std::size_t at) {
  auto& v = idx.uses[name];
  if (v.empty() || v.back() != at) v.push_back(at);
  if (name.find('.') != std::string::npos) {
    auto root = root_of(name);
    auto& r = idx.uses[root];
    if (r.empty() || r.back() != at) r.push_back(at);
  }
}

void add_use(DefUseIndex& idx, const Operand& o, std::size_t at) {
  if (o.is_name()) add_use(idx, o.text, at);
}

}  // namespace

std::string root_of(const std::string& name) { return name.substr(0, name.find('.')); }

bool mentions(const std::set<std::string>& names, const std::string& name) {
  if (names.count(name)) return true;
  return name.find('.') != std::string::npos && names.count(root_of(name));
}

bool mentions(const std::set<std::string>& names, const Operand& o) {
  return o.is_name() && mentions(names, o.text);
}

DefUseIndex def_use(const MethodDef& method) {
  DefUseIndex idx;
  for (const auto& p : method.params) {
    idx.defs[p.name];
    idx.uses[p.name];
  }
  for (const auto& fs : flatten(method.body)) {
    const Statement& s = *fs.stmt;
    if (const auto* call = s.as<Invoke>()) {
      if (call->receiver) add_use(idx, *call->receiver, fs.index);
      for (const auto& a : call->args) add_use(idx, a, fs.index);
      if (call->result) idx.defs[*call->result].push_back(fs.index);
    } else if (const auto* a = s.as<Assign>()) {
      if (const auto* bin = std::get_if<BinOp>(&a->rhs)) {
        add_use(idx, bin->left, fs.index);
        add_use(idx, bin->right, fs.index);
      } else {
        add_use(idx, std::get<Operand>(a->rhs), fs.index);
      }
      if (a->lhs.find('.') != std::string::npos && root_of(a->lhs) != "this") {
        auto& r = idx.uses[root_of(a->lhs)];
        if (r.empty() || r.back() != fs.index) r.push_back(fs.index);
      }
      idx.defs[a->lhs].push_back(fs.index);
    } else if (const auto* branch = s.as<If>()) {
      add_use(idx, branch->cond.left, fs.index);
      add_use(idx, branch->cond.right, fs.index);
    } else if (const auto* r = s.as<Return>()) {
      if (r->value) add_use(idx, *r->value, fs.index);
    }
  }
  return idx;
}

// ---------------------------------------------------------------------------

AliasMap::AliasMap(const FlatBody& body) {
  auto ensure = [&](const std::string& n) {
    if (!parent_.count(n)) parent_[n] = n;
  };
  std::function<std::string(const std::string&)> root = [&](const std::string& n) {
    std::string r = n;
    while (parent_[r] != r) r = parent_[r];
    return r;
  };
  for (const auto& fs : body) {
    const auto* a = fs.stmt->as<Assign>();
    if (!a) continue;
    const auto* rhs = std::get_if<Operand>(&a->rhs);
    if (!rhs || !rhs->is_name()) continue;
    ensure(a->lhs);
    ensure(rhs->text);
    auto ra = root(a->lhs), rb = root(rhs->text);
    if (ra == rb) continue;
    // Smaller name becomes the representative so the result is order-free.
    if (rb < ra) std::swap(ra, rb);
    parent_[rb] = ra;
  }
  for (const auto& [name, p] : parent_) members_[find(name)].insert(name);
}

std::string AliasMap::find(const std::string& name) const {
  auto it = parent_.find(name);
  if (it == parent_.end()) return name;
  std::string r = name;
  while (true) {
    auto p = parent_.at(r);
    if (p == r) return r;
    r = p;
  }
}

std::set<std::string> AliasMap::class_of(const std::string& name) const {
  auto it = members_.find(find(name));
  if (it == members_.end()) return {name};
  return it->second;
}

bool AliasMap::aliased(const std::string& a, const std::string& b) const { return find(a) == find(b); }

const char* to_string(Fact f) {
  switch (f) {
    case Fact::Copied: return "copied";
    case Fact::Compared: return "compared";
    case Fact::PassedAsArg: return "passedAsArg";
    case Fact::StoredToField: return "storedToField";
    case Fact::Returned: return "returned";
  }
  return "";
}

// ---------------------------------------------------------------------------

namespace {

struct FrameScan {
  std::vector<TraceStep> steps;
  std::set<std::string> sinks;
};

// Statements of `m` before `cutoff` that touch `names`, plus the call at
// `cutoff` itself. `isLast` marks the frame whose cutoff is the IPC call; the
// IPC target is not a sink.
FrameScan scan_frame(const Corpus::MethodEntry& m, const std::set<std::string>& names,
                     std::size_t cutoff, bool isLast) {
  FrameScan out;
  for (const auto& fs : m.flat) {
    if (fs.index > cutoff) break;
    const Statement& s = *fs.stmt;
    auto step = [&](Fact f) { out.steps.push_back(TraceStep{m.ref, fs.index, f}); };
    if (const auto* call = s.as<Invoke>()) {
      bool passed = call->receiver && mentions(names, *call->receiver);
      for (const auto& a : call->args) passed = passed || mentions(names, a);
      if (passed) {
        step(Fact::PassedAsArg);
        if (!(isLast && fs.index == cutoff)) out.sinks.insert(call->target);
      } else if (call->result && names.count(*call->result)) {
        step(Fact::Copied);
      }
    } else if (fs.index == cutoff) {
      continue;
    } else if (const auto* a = s.as<Assign>()) {
      bool lhsTracked = mentions(names, a->lhs);
      bool rhsTracked = false;
      if (const auto* bin = std::get_if<BinOp>(&a->rhs)) {
        // Arithmetic consumes the value; the result is a fresh value.
        if (mentions(names, bin->left) || mentions(names, bin->right)) {
          step(Fact::PassedAsArg);
          continue;
        }
      } else {
        rhsTracked = mentions(names, std::get<Operand>(a->rhs));
      }
      if (!lhsTracked && !rhsTracked) continue;
      if (a->lhs.find('.') != std::string::npos && rhsTracked) {
        step(Fact::StoredToField);
        out.sinks.insert(a->lhs);
      } else {
        step(Fact::Copied);
      }
    } else if (const auto* branch = s.as<If>()) {
      if (mentions(names, branch->cond.left) || mentions(names, branch->cond.right)) {
        step(Fact::Compared);
        out.sinks.insert("guard:" + m.ref + "#" + std::to_string(fs.index));
      }
    } else if (const auto* r = s.as<Return>()) {
      if (r->value && mentions(names, *r->value)) step(Fact::Returned);
    }
  }
  return out;
}

// Where the tracked names get their value inside one method, ignoring
// parameters: the first call result, constant or field copied into them.
std::optional<TraceOrigin> local_origin(const Corpus::MethodEntry& m,
                                        const std::set<std::string>& names, std::size_t cutoff) {
  std::optional<TraceOrigin> literal, field;
  for (const auto& fs : m.flat) {
    if (fs.index >= cutoff) break;
    if (const auto* call = fs.stmt->as<Invoke>()) {
      if (call->result && names.count(*call->result)) {
        return TraceOrigin{TraceOrigin::Kind::CallResult, call->target, m.ref, fs.index};
      }
    } else if (const auto* a = fs.stmt->as<Assign>()) {
      if (!names.count(a->lhs)) continue;
      const auto* o = std::get_if<Operand>(&a->rhs);
      if (o && o->is_constant() && !literal) {
        literal = TraceOrigin{TraceOrigin::Kind::Literal, o->to_string(), m.ref, fs.index};
      }
    }
  }
  if (literal) return literal;
  for (const auto& n : names) {
    if (n.find('.') != std::string::npos) {
      field = TraceOrigin{TraceOrigin::Kind::Field, n, m.ref, 0};
      break;
    }
  }
  return field;
}

}  // namespace

TaintTrace backward_track(const Corpus& corpus, const CallChain& chain, std::size_t ipcArgIndex) {
  if (chain.methods.size() < 2 || chain.callSites.size() + 1 != chain.methods.size()) {
    throw Error("backward_track: chain has no IPC call");
  }
  std::vector<TrackedFrame> frames;
  std::vector<FrameScan> scans;
  TaintTrace trace;

  std::size_t i = chain.methods.size() - 2;
  const auto* m = &corpus.require_method(chain.methods[i]);
  if (chain.callSites[i].empty()) throw Error("backward_track: missing call site");
  std::size_t cutoff = chain.callSites[i].front();
  const auto* call = m->flat.at(cutoff).stmt->as<Invoke>();
  if (!call) throw Error("backward_track: call site is not an invoke");
  if (ipcArgIndex >= call->args.size()) throw Error("backward_track: argument index out of range");
  Operand value = call->args[ipcArgIndex];
  bool last = true;

  while (true) {
    if (value.is_constant()) {
      trace.origin = TraceOrigin{TraceOrigin::Kind::Literal, value.to_string(), m->ref, cutoff};
      break;
    }
    AliasMap aliases(m->flat);
    auto names = aliases.class_of(value.text);
    frames.push_back(TrackedFrame{m->ref, cutoff, names});
    scans.push_back(scan_frame(*m, names, cutoff, last));
    last = false;

    if (auto local = local_origin(*m, names, cutoff)) {
      trace.origin = *local;
      break;
    }
    std::optional<std::size_t> param;
    for (std::size_t p = 0; p < m->def->params.size(); ++p) {
      if (names.count(m->def->params[p].name)) {
        param = p;
        break;
      }
    }
    if (!param) {
      trace.origin = TraceOrigin{TraceOrigin::Kind::Unknown, value.text, m->ref, cutoff};
      break;
    }
    if (i == 0) {
      trace.origin = TraceOrigin{TraceOrigin::Kind::Parameter, m->def->params[*param].name, m->ref, 0};
      break;
    }
    // Bind to the caller's argument at the chain call site.
    --i;
    const auto* caller = &corpus.require_method(chain.methods[i]);
    std::size_t site = chain.callSites[i].front();
    const auto* upCall = caller->flat.at(site).stmt->as<Invoke>();
    if (!upCall || *param >= upCall->args.size()) {
      trace.origin = TraceOrigin{TraceOrigin::Kind::Parameter, m->def->params[*param].name, m->ref, 0};
      break;
    }
    value = upCall->args[*param];
    m = caller;
    cutoff = site;
  }

  std::reverse(frames.begin(), frames.end());
  std::reverse(scans.begin(), scans.end());
  for (auto& s : scans) {
    trace.steps.insert(trace.steps.end(), s.steps.begin(), s.steps.end());
    trace.sinks.insert(s.sinks.begin(), s.sinks.end());
  }
  trace.frames = std::move(frames);
  return trace;
}

// ---------------------------------------------------------------------------

EscapeReport escape_analysis(const MethodDef& method, const std::string& parameter,
                             const EscapeConfig& config) {
  auto pos = method.param_index(parameter);
  if (!pos) throw UnknownParameter(parameter, method.signature);
  EscapeReport report;
  report.parameter = parameter;
  report.position = *pos;
  auto flat = flatten(method.body);
  AliasMap aliases(flat);
  auto names = aliases.class_of(parameter);

  auto field_alias = [&](const std::string& var) {
    for (const auto& n : aliases.class_of(var)) {
      if (n.find('.') != std::string::npos) return n;
    }
    return var;
  };

  for (const auto& fs : flat) {
    if (const auto* a = fs.stmt->as<Assign>()) {
      const auto* rhs = std::get_if<Operand>(&a->rhs);
      if (a->lhs.find('.') != std::string::npos && rhs && mentions(names, *rhs) &&
          names.count(rhs->text)) {
        report.escapeSites.push_back(EscapeSite{EscapeSite::Kind::Field, a->lhs, fs.index});
      }
    } else if (const auto* call = fs.stmt->as<Invoke>()) {
      bool passed = false;
      for (const auto& arg : call->args) passed = passed || (arg.is_name() && names.count(arg.text));
      if (!passed) continue;
      if (config.callbackRegistrations.count(call->target)) {
        report.escapeSites.push_back(EscapeSite{EscapeSite::Kind::Callback, call->target, fs.index});
      } else if (name_matches_any(call->target, config.collectionMutators)) {
        auto where = call->receiver ? field_alias(*call->receiver) : qualified_name(call->target);
        report.escapeSites.push_back(EscapeSite{EscapeSite::Kind::Collection, where, fs.index});
      }
    }
  }
  report.escapes = !report.escapeSites.empty();
  return report;
}

}  // namespace helper_audit
