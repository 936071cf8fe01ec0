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

#include "helper_audit/ir.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "helper_audit/error.hpp"

namespace helper_audit {

Operand Operand::variable(std::string name) {
  Operand o;
  o.kind = Kind::Variable;
  o.text = std::move(name);
  return o;
}

Operand Operand::field(std::string path) {
  Operand o;
  o.kind = Kind::Field;
  o.text = std::move(path);
  return o;
}

Operand Operand::name(std::string name) {
  if (name.find('.') != std::string::npos) return field(std::move(name));
  return variable(std::move(name));
}

Operand Operand::null() { return Operand{}; }

Operand Operand::integer_constant(std::int64_t v) {
  Operand o;
  o.kind = Kind::Integer;
  o.integer = v;
  return o;
}

Operand Operand::real_constant(double v) {
  Operand o;
  o.kind = Kind::Real;
  o.real = v;
  return o;
}

Operand Operand::boolean_constant(bool v) {
  Operand o;
  o.kind = Kind::Boolean;
  o.boolean = v;
  return o;
}

Operand Operand::string_constant(std::string v) {
  Operand o;
  o.kind = Kind::String;
  o.text = std::move(v);
  return o;
}

std::string Operand::to_string() const {
  switch (kind) {
    case Kind::Variable:
    case Kind::Field:
      return text;
    case Kind::Null:
      return "null";
    case Kind::Integer:
      return std::to_string(integer);
    case Kind::Real: {
      std::ostringstream os;
      os << real;
      return os.str();
    }
    case Kind::Boolean:
      return boolean ? "true" : "false";
    case Kind::String:
      return "\"" + text + "\"";
  }
  return {};
}

bool operator==(const Operand& a, const Operand& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Operand::Kind::Variable:
    case Operand::Kind::Field:
    case Operand::Kind::String:
      return a.text == b.text;
    case Operand::Kind::Null:
      return true;
    case Operand::Kind::Integer:
      return a.integer == b.integer;
    case Operand::Kind::Real:
      return a.real == b.real;
    case Operand::Kind::Boolean:
      return a.boolean == b.boolean;
  }
  return false;
}

bool operator==(const If& a, const If& b) {
  return a.cond == b.cond && a.thenBlock == b.thenBlock && a.elseBlock == b.elseBlock;
}

bool operator==(const Statement& a, const Statement& b) { return a.node == b.node; }

const char* to_string(Dispatch d) {
  switch (d) {
    case Dispatch::Virtual: return "virtual";
    case Dispatch::Static: return "static";
    case Dispatch::Interface: return "interface";
    case Dispatch::Special: return "special";
  }
  return "";
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Eq: return "eq";
    case Relation::Ne: return "ne";
    case Relation::Lt: return "lt";
    case Relation::Le: return "le";
    case Relation::Gt: return "gt";
    case Relation::Ge: return "ge";
  }
  return "";
}

std::optional<Dispatch> parse_dispatch(std::string_view s) {
  if (s == "virtual") return Dispatch::Virtual;
  if (s == "static") return Dispatch::Static;
  if (s == "interface") return Dispatch::Interface;
  if (s == "special") return Dispatch::Special;
  return std::nullopt;
}

std::optional<Relation> parse_relation(std::string_view s) {
  if (s == "eq") return Relation::Eq;
  if (s == "ne") return Relation::Ne;
  if (s == "lt") return Relation::Lt;
  if (s == "le") return Relation::Le;
  if (s == "gt") return Relation::Gt;
  if (s == "ge") return Relation::Ge;
  return std::nullopt;
}

const char* to_string(ClassKind k) {
  switch (k) {
    case ClassKind::Class: return "class";
    case ClassKind::Interface: return "interface";
    case ClassKind::Abstract: return "abstract";
  }
  return "";
}

std::optional<ClassKind> parse_class_kind(std::string_view s) {
  if (s == "class") return ClassKind::Class;
  if (s == "interface") return ClassKind::Interface;
  if (s == "abstract") return ClassKind::Abstract;
  return std::nullopt;
}

std::optional<std::size_t> MethodDef::param_index(std::string_view n) const {
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].name == n) return i;
  }
  return std::nullopt;
}

std::optional<MethodRefParts> split_method_ref(std::string_view ref) {
  auto open = ref.find('(');
  if (open == std::string_view::npos || ref.empty() || ref.back() != ')') return std::nullopt;
  auto dot = ref.rfind('.', open);
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == open) return std::nullopt;
  MethodRefParts parts;
  parts.className = std::string(ref.substr(0, dot));
  parts.signature = std::string(ref.substr(dot + 1));
  parts.name = std::string(ref.substr(dot + 1, open - dot - 1));
  return parts;
}

std::string make_method_ref(std::string_view className, std::string_view signature) {
  std::string out(className);
  out += '.';
  out += signature;
  return out;
}

std::string make_signature(std::string_view name, const std::vector<Param>& params) {
  std::string out(name);
  out += '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ',';
    out += params[i].type;
  }
  out += ')';
  return out;
}

std::string simple_name(std::string_view ref) {
  auto parts = split_method_ref(ref);
  if (!parts) return std::string(ref);
  return parts->name;
}

std::string qualified_name(std::string_view ref) {
  auto open = ref.find('(');
  return std::string(ref.substr(0, open));
}

namespace {

void flatten_into(const std::vector<Statement>& block, int depth, FlatBody& out) {
  for (const auto& s : block) {
    std::size_t at = out.size();
    out.push_back(FlatStatement{&s, at, at + 1, at + 1, depth});
    if (const auto* branch = s.as<If>()) {
      flatten_into(branch->thenBlock, depth + 1, out);
      out[at].elseBegin = out.size();
      flatten_into(branch->elseBlock, depth + 1, out);
      out[at].end = out.size();
    }
  }
}

}  // namespace

FlatBody flatten(const std::vector<Statement>& body) {
  FlatBody out;
  flatten_into(body, 0, out);
  return out;
}

// ---------------------------------------------------------------------------

TypeHierarchy TypeHierarchy::build(const std::vector<ClassDef>& classes,
                                   const std::vector<std::string>& externals) {
  TypeHierarchy h;
  std::map<std::string, std::vector<std::string>> direct;  // class -> supertypes
  std::map<std::string, ClassKind> kinds;
  for (const auto& c : classes) {
    if (direct.count(c.name)) continue;  // duplicate names are a validation issue
    auto& supers = direct[c.name];
    if (c.superclass) supers.push_back(*c.superclass);
    for (const auto& i : c.interfaces) supers.push_back(i);
    std::sort(supers.begin(), supers.end());
    supers.erase(std::unique(supers.begin(), supers.end()), supers.end());
    kinds[c.name] = c.kind;
    h.edgeCount_ += supers.size();
  }
  std::set<std::string> externalSet(externals.begin(), externals.end());
  for (const auto& [name, supers] : direct) {
    for (const auto& s : supers) {
      if (!direct.count(s)) externalSet.insert(s);
    }
  }
  for (const auto& e : externalSet) {
    if (!direct.count(e)) direct[e];
  }

  // Supertype closure by DFS with colors; a grey hit is a cycle.
  enum class Color { White, Grey, Black };
  std::map<std::string, Color> color;
  std::vector<std::string> stack;
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    color[n] = Color::Grey;
    stack.push_back(n);
    auto& closure = h.supertypes_[n];
    closure.insert(n);
    for (const auto& s : direct[n]) {
      if (color[s] == Color::Grey) {
        auto from = std::find(stack.begin(), stack.end(), s);
        std::string cycle;
        for (auto it = from; it != stack.end(); ++it) cycle += *it + " -> ";
        cycle += s;
        throw CycleError("inheritance cycle: " + cycle);
      }
      if (color[s] == Color::White) visit(s);
      const auto& sup = h.supertypes_[s];
      closure.insert(sup.begin(), sup.end());
    }
    stack.pop_back();
    color[n] = Color::Black;
  };
  for (const auto& [name, supers] : direct) {
    if (color[name] == Color::White) visit(name);
  }

  for (const auto& [name, supers] : h.supertypes_) {
    h.subtypes_[name];
    for (const auto& s : supers) h.subtypes_[s].insert(name);
  }
  for (const auto& [name, subs] : h.subtypes_) {
    auto k = kinds.find(name);
    if (k == kinds.end() || k->second != ClassKind::Interface) continue;
    auto& impls = h.implementors_[name];
    for (const auto& s : subs) {
      auto sk = kinds.find(s);
      if (sk != kinds.end() && sk->second != ClassKind::Interface) impls.insert(s);
    }
  }
  return h;
}

const std::set<std::string>& TypeHierarchy::subtypes_of(const std::string& name) const {
  auto it = subtypes_.find(name);
  if (it == subtypes_.end()) throw UnknownClass(name);
  return it->second;
}

const std::set<std::string>& TypeHierarchy::supertypes_of(const std::string& name) const {
  auto it = supertypes_.find(name);
  if (it == supertypes_.end()) throw UnknownClass(name);
  return it->second;
}

bool TypeHierarchy::is_subtype(const std::string& sub, const std::string& super) const {
  auto it = supertypes_.find(sub);
  return it != supertypes_.end() && it->second.count(super) != 0;
}

std::set<std::string> subtypes_of(const TypeHierarchy& h, const std::string& name) {
  return h.subtypes_of(name);
}

// ---------------------------------------------------------------------------

namespace {

void collect_invokes(const std::vector<Statement>& block, std::vector<const Invoke*>& out) {
  for (const auto& s : block) {
    if (const auto* inv = s.as<Invoke>()) {
      out.push_back(inv);
    } else if (const auto* branch = s.as<If>()) {
      collect_invokes(branch->thenBlock, out);
      collect_invokes(branch->elseBlock, out);
    }
  }
}

}  // namespace

Corpus::Corpus(CorpusDocument doc) {
  auto state = std::make_shared<State>();
  state->doc = std::move(doc);
  const auto& classes = state->doc.classes;
  state->externals.insert(state->doc.externals.begin(), state->doc.externals.end());
  for (std::size_t i = 0; i < classes.size(); ++i) state->classIndex.emplace(classes[i].name, i);

  auto known = [&](const std::string& n) {
    return state->classIndex.count(n) != 0 || state->externals.count(n) != 0;
  };
  for (const auto& c : classes) {
    if (c.superclass && !known(*c.superclass)) {
      throw ResolutionError(*c.superclass, "superclass of " + c.name);
    }
    for (const auto& i : c.interfaces) {
      if (!known(i)) throw ResolutionError(i, "interfaces of " + c.name);
    }
    if (c.enclosing && !known(*c.enclosing)) {
      throw ResolutionError(*c.enclosing, "enclosing class of " + c.name);
    }
  }

  state->hierarchy = TypeHierarchy::build(classes, state->doc.externals);

  // Enclosing chains must terminate too.
  for (const auto& c : classes) {
    std::set<std::string> seen{c.name};
    const ClassDef* cur = &c;
    while (cur->enclosing) {
      if (!seen.insert(*cur->enclosing).second) {
        throw CycleError("enclosing cycle through " + c.name);
      }
      auto it = state->classIndex.find(*cur->enclosing);
      if (it == state->classIndex.end()) break;
      cur = &classes[it->second];
    }
  }

  for (const auto& c : classes) {
    for (const auto& m : c.methods) {
      auto ref = make_method_ref(c.name, m.signature);
      if (state->methods.count(ref)) continue;
      MethodEntry e;
      e.ref = ref;
      e.owner = &c;
      e.def = &m;
      e.flat = flatten(m.body);
      state->methods.emplace(ref, std::move(e));
      state->sortedRefs.push_back(ref);
    }
  }
  std::sort(state->sortedRefs.begin(), state->sortedRefs.end());
  state_ = state;

  for (const auto& c : classes) {
    for (const auto& m : c.methods) {
      std::vector<const Invoke*> invokes;
      collect_invokes(m.body, invokes);
      for (const auto* inv : invokes) {
        auto context = "body of " + make_method_ref(c.name, m.signature);
        auto parts = split_method_ref(inv->target);
        if (!parts) throw ResolutionError(inv->target, context + " (malformed reference)");
        if (!known(parts->className)) throw ResolutionError(parts->className, context);
        if (state->externals.count(parts->className) && !state->classIndex.count(parts->className)) {
          continue;
        }
        if (parts->name == "<init>") continue;
        if (lookup_any_ancestor(parts->className, parts->signature)) continue;
        // Methods inherited from an external supertype are opaque.
        bool externalAncestor = false;
        for (const auto& s : state->hierarchy.supertypes_of(parts->className)) {
          if (!state->classIndex.count(s)) externalAncestor = true;
        }
        if (!externalAncestor) throw ResolutionError(inv->target, context);
      }
    }
  }
  for (const auto& cb : state->doc.callbackEdges) {
    auto parts = split_method_ref(cb.registration);
    if (!parts) throw ResolutionError(cb.registration, "callback_edges (malformed reference)");
    if (!known(parts->className)) throw ResolutionError(parts->className, "callback_edges");
    if (!known(cb.interface)) throw ResolutionError(cb.interface, "callback_edges");
  }
}

const ClassDef* Corpus::find_class(const std::string& name) const {
  auto it = state_->classIndex.find(name);
  if (it == state_->classIndex.end()) return nullptr;
  return &state_->doc.classes[it->second];
}

bool Corpus::is_external(const std::string& name) const {
  return state_->externals.count(name) != 0 && !state_->classIndex.count(name);
}

bool Corpus::knows_class(const std::string& name) const {
  return state_->classIndex.count(name) != 0 || state_->externals.count(name) != 0;
}

const Corpus::MethodEntry* Corpus::method(const std::string& ref) const {
  auto it = state_->methods.find(ref);
  return it == state_->methods.end() ? nullptr : &it->second;
}

const Corpus::MethodEntry& Corpus::require_method(const std::string& ref) const {
  const auto* m = method(ref);
  if (!m) throw UnknownMethod(ref);
  return *m;
}

const Corpus::MethodEntry* Corpus::lookup_superclass_chain(const std::string& className,
                                                           const std::string& signature,
                                                           bool concreteOnly) const {
  std::set<std::string> seen;
  const ClassDef* cur = find_class(className);
  while (cur && seen.insert(cur->name).second) {
    if (const auto* m = method(make_method_ref(cur->name, signature))) {
      if (!concreteOnly || !m->def->isAbstract) return m;
    }
    if (!cur->superclass) break;
    cur = find_class(*cur->superclass);
  }
  return nullptr;
}

const Corpus::MethodEntry* Corpus::lookup_any_ancestor(const std::string& className,
                                                       const std::string& signature) const {
  if (const auto* m = lookup_superclass_chain(className, signature, false)) return m;
  if (!state_->hierarchy.contains(className)) return nullptr;
  for (const auto& s : state_->hierarchy.supertypes_of(className)) {
    if (const auto* m = method(make_method_ref(s, signature))) return m;
  }
  return nullptr;
}

std::string Corpus::top_level_of(const std::string& className) const {
  std::string cur = className;
  std::set<std::string> seen;
  while (seen.insert(cur).second) {
    const ClassDef* c = find_class(cur);
    if (!c || !c->enclosing) break;
    cur = *c->enclosing;
  }
  return cur;
}

}  // namespace helper_audit
