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

#include "helper_audit/validate.hpp"

#include <algorithm>
#include <set>

namespace helper_audit {

std::string Diagnostic::to_string() const {
  std::string out = code + ": " + className;
  if (!method.empty()) out += "." + method;
  if (statement) out += " #" + std::to_string(*statement);
  out += ": " + message;
  return out;
}

namespace {

class MethodChecker {
 public:
  MethodChecker(const Corpus& corpus, const ClassDef& cls, const MethodDef& method,
                std::vector<Diagnostic>& out)
      : corpus_(corpus), cls_(cls), method_(method), out_(out) {}

  void run() {
    std::set<std::string> defined;
    for (const auto& p : method_.params) defined.insert(p.name);
    if (!method_.isStatic) defined.insert("this");
    walk(method_.body, Flow{defined, false});
  }

 private:
  struct Flow {
    std::set<std::string> defined;
    bool terminated = false;
  };

  void report(const std::string& code, std::size_t stmt, const std::string& msg) {
    out_.push_back(Diagnostic{code, cls_.name, method_.signature, stmt, msg});
  }

  void read_name(const std::string& name, const Flow& flow, std::size_t stmt) {
    auto dot = name.find('.');
    if (dot == std::string::npos) {
      if (!flow.defined.count(name)) {
        report("unassigned-variable", stmt, "variable '" + name + "' read before assignment");
      }
      return;
    }
    auto root = name.substr(0, dot);
    auto owner = name.substr(0, name.rfind('.'));
    if (root == "this" || corpus_.knows_class(owner)) return;
    if (!flow.defined.count(root)) {
      report("unassigned-variable", stmt,
             "variable '" + root + "' read before assignment (field path '" + name + "')");
    }
  }

  void read(const Operand& o, const Flow& flow, std::size_t stmt) {
    if (o.is_name()) read_name(o.text, flow, stmt);
  }

  Flow walk(const std::vector<Statement>& block, Flow flow) {
    for (const auto& s : block) {
      std::size_t at = counter_++;
      if (const auto* inv = s.as<Invoke>()) {
        if (inv->receiver) read_name(*inv->receiver, flow, at);
        if (!inv->receiver &&
            (inv->dispatch == Dispatch::Virtual || inv->dispatch == Dispatch::Interface)) {
          report("missing-receiver", at, "virtual/interface invoke of " + inv->target +
                                              " has no receiver");
        }
        for (const auto& a : inv->args) read(a, flow, at);
        if (inv->result) flow.defined.insert(*inv->result);
      } else if (const auto* a = s.as<Assign>()) {
        if (const auto* bin = std::get_if<BinOp>(&a->rhs)) {
          read(bin->left, flow, at);
          read(bin->right, flow, at);
        } else {
          read(std::get<Operand>(a->rhs), flow, at);
        }
        if (a->lhs.find('.') == std::string::npos) {
          flow.defined.insert(a->lhs);
        } else {
          // Writing v.f reads v.
          auto root = a->lhs.substr(0, a->lhs.find('.'));
          auto owner = a->lhs.substr(0, a->lhs.rfind('.'));
          if (root != "this" && !corpus_.knows_class(owner) && !flow.defined.count(root)) {
            report("unassigned-variable", at, "variable '" + root + "' read before assignment");
          }
        }
      } else if (const auto* branch = s.as<If>()) {
        read(branch->cond.left, flow, at);
        read(branch->cond.right, flow, at);
        Flow t = walk(branch->thenBlock, flow);
        Flow e = walk(branch->elseBlock, flow);
        if (t.terminated && e.terminated) {
          flow.terminated = true;
        } else if (t.terminated) {
          flow.defined = e.defined;
        } else if (e.terminated) {
          flow.defined = t.defined;
        } else {
          std::set<std::string> both;
          std::set_intersection(t.defined.begin(), t.defined.end(), e.defined.begin(),
                                e.defined.end(), std::inserter(both, both.end()));
          flow.defined = std::move(both);
        }
      } else if (const auto* r = s.as<Return>()) {
        if (r->value) read(*r->value, flow, at);
        flow.terminated = true;
      } else if (s.as<Throw>()) {
        flow.terminated = true;
      }
    }
    return flow;
  }

  const Corpus& corpus_;
  const ClassDef& cls_;
  const MethodDef& method_;
  std::vector<Diagnostic>& out_;
  std::size_t counter_ = 0;
};

}  // namespace

std::vector<Diagnostic> validate_corpus(const Corpus& corpus) {
  std::vector<Diagnostic> out;
  std::set<std::string> seenClasses;
  for (const auto& c : corpus.classes()) {
    if (!seenClasses.insert(c.name).second) {
      out.push_back(Diagnostic{"duplicate-class", c.name, "", std::nullopt,
                               "class declared more than once"});
      continue;
    }
    if (c.kind == ClassKind::Interface && c.superclass) {
      out.push_back(Diagnostic{"interface-superclass", c.name, "", std::nullopt,
                               "interface declares superclass " + *c.superclass});
    }
    std::set<std::string> sigs;
    for (const auto& m : c.methods) {
      if (!sigs.insert(m.signature).second) {
        out.push_back(Diagnostic{"duplicate-signature", c.name, m.signature, std::nullopt,
                                 "signature declared more than once"});
        continue;
      }
      auto expected = make_signature(m.name, m.params);
      if (expected != m.signature) {
        out.push_back(Diagnostic{"signature-mismatch", c.name, m.signature, std::nullopt,
                                 "signature does not match name and parameters (expected " +
                                     expected + ")"});
      }
      std::set<std::string> paramNames;
      for (const auto& p : m.params) {
        if (!paramNames.insert(p.name).second) {
          out.push_back(Diagnostic{"duplicate-parameter", c.name, m.signature, std::nullopt,
                                   "parameter '" + p.name + "' declared twice"});
        }
      }
      if (m.isAbstract && !m.body.empty()) {
        out.push_back(Diagnostic{"abstract-body", c.name, m.signature, std::nullopt,
                                 "abstract method has a body"});
      }
      if (m.isNative && !m.body.empty()) {
        out.push_back(Diagnostic{"native-body", c.name, m.signature, std::nullopt,
                                 "native method has a body"});
      }
      MethodChecker(corpus, c, m, out).run();
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace helper_audit
