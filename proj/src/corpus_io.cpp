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

#include "helper_audit/corpus_io.hpp"

#include <initializer_list>

#include "helper_audit/error.hpp"

namespace helper_audit {

using nlohmann::json;

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

void expect_keys(const json& j, const std::string& where,
                 std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional) {
  if (!j.is_object()) throw SyntaxError(where, "expected an object");
  for (const char* k : required) {
    if (!j.contains(k)) throw SyntaxError(where, std::string("missing key '") + k + "'");
  }
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : required) ok = ok || key == k;
    for (const char* k : optional) ok = ok || key == k;
    if (!ok) throw SyntaxError(where + "/" + key, "unknown key '" + key + "'");
  }
}

std::string get_string(const json& j, const char* key, const std::string& where) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw SyntaxError(where + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::optional<std::string> get_optional_string(const json& j, const char* key,
                                               const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get_string(j, key, where);
}

std::vector<std::string> get_string_list(const json& j, const char* key, const std::string& where) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const auto& v = j.at(key);
  if (!v.is_array()) throw SyntaxError(where + "/" + key, "expected an array");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) {
      throw SyntaxError(where + "/" + key + "/" + std::to_string(i), "expected a string");
    }
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

const json& get_array(const json& j, const char* key, const std::string& where) {
  static const json kEmpty = json::array();
  if (!j.contains(key)) return kEmpty;
  const auto& v = j.at(key);
  if (!v.is_array()) throw SyntaxError(where + "/" + key, "expected an array");
  return v;
}

std::vector<Statement> block_from_json(const json& j, const std::string& where);

Statement statement_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("op") || !j.at("op").is_string()) {
    throw SyntaxError(where, "statement needs a string 'op'");
  }
  const auto op = j.at("op").get<std::string>();
  Statement s;
  if (op == "invoke") {
    expect_keys(j, where, {"op", "dispatch", "target"}, {"receiver", "args", "result"});
    Invoke inv;
    auto d = parse_dispatch(get_string(j, "dispatch", where));
    if (!d) throw SyntaxError(where + "/dispatch", "unknown dispatch kind");
    inv.dispatch = *d;
    inv.target = get_string(j, "target", where);
    inv.receiver = get_optional_string(j, "receiver", where);
    inv.result = get_optional_string(j, "result", where);
    const auto& args = get_array(j, "args", where);
    for (std::size_t i = 0; i < args.size(); ++i) {
      inv.args.push_back(operand_from_json(args[i], where + "/args/" + std::to_string(i)));
    }
    if (inv.receiver && inv.receiver->find('.') != std::string::npos) {
      throw SyntaxError(where + "/receiver", "receiver must be a variable");
    }
    s.node = std::move(inv);
  } else if (op == "assign") {
    expect_keys(j, where, {"op", "lhs", "rhs"}, {});
    Assign a;
    a.lhs = get_string(j, "lhs", where);
    const auto& rhs = j.at("rhs");
    if (rhs.is_object() && rhs.contains("binop")) {
      expect_keys(rhs, where + "/rhs", {"binop"}, {});
      const auto& b = rhs.at("binop");
      auto bw = where + "/rhs/binop";
      expect_keys(b, bw, {"left", "op", "right"}, {});
      BinOp bin;
      bin.left = operand_from_json(b.at("left"), bw + "/left");
      bin.op = get_string(b, "op", bw);
      bin.right = operand_from_json(b.at("right"), bw + "/right");
      a.rhs = std::move(bin);
    } else {
      a.rhs = operand_from_json(rhs, where + "/rhs");
    }
    s.node = std::move(a);
  } else if (op == "if") {
    expect_keys(j, where, {"op", "cond"}, {"thenBlock", "elseBlock"});
    If branch;
    const auto& c = j.at("cond");
    auto cw = where + "/cond";
    expect_keys(c, cw, {"left", "relation", "right"}, {});
    branch.cond.left = operand_from_json(c.at("left"), cw + "/left");
    auto rel = parse_relation(get_string(c, "relation", cw));
    if (!rel) throw SyntaxError(cw + "/relation", "unknown relation");
    branch.cond.relation = *rel;
    branch.cond.right = operand_from_json(c.at("right"), cw + "/right");
    if (j.contains("thenBlock")) branch.thenBlock = block_from_json(j.at("thenBlock"), where + "/thenBlock");
    if (j.contains("elseBlock")) branch.elseBlock = block_from_json(j.at("elseBlock"), where + "/elseBlock");
    s.node = std::move(branch);
  } else if (op == "throw") {
    expect_keys(j, where, {"op", "exceptionType"}, {});
    s.node = Throw{get_string(j, "exceptionType", where)};
  } else if (op == "return") {
    expect_keys(j, where, {"op"}, {"value"});
    Return r;
    if (j.contains("value")) r.value = operand_from_json(j.at("value"), where + "/value");
    s.node = std::move(r);
  } else {
    throw SyntaxError(where + "/op", "unknown statement kind '" + op + "'");
  }
  return s;
}

std::vector<Statement> block_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw SyntaxError(where, "expected an array of statements");
  std::vector<Statement> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(statement_from_json(j[i], where + "/" + std::to_string(i)));
  }
  return out;
}

MethodDef method_from_json(const json& j, const std::string& where) {
  expect_keys(j, where, {"name", "signature"}, {"params", "returnType", "body", "modifiers"});
  MethodDef m;
  m.name = get_string(j, "name", where);
  m.signature = get_string(j, "signature", where);
  const auto& params = get_array(j, "params", where);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto pw = where + "/params/" + std::to_string(i);
    expect_keys(params[i], pw, {"name", "type"}, {});
    m.params.push_back(Param{get_string(params[i], "name", pw), get_string(params[i], "type", pw)});
  }
  if (j.contains("returnType")) m.returnType = get_string(j, "returnType", where);
  if (j.contains("body")) m.body = block_from_json(j.at("body"), where + "/body");
  for (const auto& mod : get_string_list(j, "modifiers", where)) {
    if (mod == "static") {
      m.isStatic = true;
    } else if (mod == "abstract") {
      m.isAbstract = true;
    } else if (mod == "native") {
      m.isNative = true;
    } else {
      throw SyntaxError(where + "/modifiers", "unknown modifier '" + mod + "'");
    }
  }
  return m;
}

ClassDef class_from_json(const json& j, const std::string& where) {
  expect_keys(j, where, {"name", "kind"},
              {"package", "superclass", "interfaces", "enclosing", "methods"});
  ClassDef c;
  c.name = get_string(j, "name", where);
  if (j.contains("package")) c.package = get_string(j, "package", where);
  auto kind = parse_class_kind(get_string(j, "kind", where));
  if (!kind) throw SyntaxError(where + "/kind", "unknown class kind");
  c.kind = *kind;
  c.superclass = get_optional_string(j, "superclass", where);
  c.interfaces = get_string_list(j, "interfaces", where);
  c.enclosing = get_optional_string(j, "enclosing", where);
  const auto& methods = get_array(j, "methods", where);
  for (std::size_t i = 0; i < methods.size(); ++i) {
    c.methods.push_back(method_from_json(methods[i], where + "/methods/" + std::to_string(i)));
  }
  return c;
}

CallbackEntry callback_from_json(const json& j, const std::string& where) {
  expect_keys(j, where, {"registration", "interface", "callback"}, {});
  return CallbackEntry{get_string(j, "registration", where), get_string(j, "interface", where),
                       get_string(j, "callback", where)};
}

ordered_json block_to_json(const std::vector<Statement>& block);

ordered_json statement_to_json(const Statement& s) {
  ordered_json j;
  if (const auto* inv = s.as<Invoke>()) {
    j["op"] = "invoke";
    j["dispatch"] = to_string(inv->dispatch);
    j["target"] = inv->target;
    if (inv->receiver) j["receiver"] = *inv->receiver;
    if (!inv->args.empty()) {
      j["args"] = ordered_json::array();
      for (const auto& a : inv->args) j["args"].push_back(operand_to_json(a));
    }
    if (inv->result) j["result"] = *inv->result;
  } else if (const auto* a = s.as<Assign>()) {
    j["op"] = "assign";
    j["lhs"] = a->lhs;
    if (const auto* bin = std::get_if<BinOp>(&a->rhs)) {
      ordered_json b;
      b["left"] = operand_to_json(bin->left);
      b["op"] = bin->op;
      b["right"] = operand_to_json(bin->right);
      j["rhs"] = ordered_json{{"binop", b}};
    } else {
      j["rhs"] = operand_to_json(std::get<Operand>(a->rhs));
    }
  } else if (const auto* branch = s.as<If>()) {
    j["op"] = "if";
    ordered_json c;
    c["left"] = operand_to_json(branch->cond.left);
    c["relation"] = to_string(branch->cond.relation);
    c["right"] = operand_to_json(branch->cond.right);
    j["cond"] = c;
    j["thenBlock"] = block_to_json(branch->thenBlock);
    if (!branch->elseBlock.empty()) j["elseBlock"] = block_to_json(branch->elseBlock);
  } else if (const auto* t = s.as<Throw>()) {
    j["op"] = "throw";
    j["exceptionType"] = t->exceptionType;
  } else if (const auto* r = s.as<Return>()) {
    j["op"] = "return";
    if (r->value) j["value"] = operand_to_json(*r->value);
  }
  return j;
}

ordered_json block_to_json(const std::vector<Statement>& block) {
  auto out = ordered_json::array();
  for (const auto& s : block) out.push_back(statement_to_json(s));
  return out;
}

}  // namespace

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SyntaxError(line_col(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
}

Operand operand_from_json(const json& j, const std::string& where) {
  if (j.is_null()) return Operand::null();
  if (j.is_boolean()) return Operand::boolean_constant(j.get<bool>());
  if (j.is_number_integer()) return Operand::integer_constant(j.get<std::int64_t>());
  if (j.is_number_float()) return Operand::real_constant(j.get<double>());
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s.empty()) throw SyntaxError(where, "empty operand name");
    return Operand::name(std::move(s));
  }
  if (j.is_object()) {
    expect_keys(j, where, {"const"}, {});
    const auto& c = j.at("const");
    if (c.is_string()) return Operand::string_constant(c.get<std::string>());
    if (c.is_boolean()) return Operand::boolean_constant(c.get<bool>());
    if (c.is_number_integer()) return Operand::integer_constant(c.get<std::int64_t>());
    if (c.is_number_float()) return Operand::real_constant(c.get<double>());
    if (c.is_null()) return Operand::null();
  }
  throw SyntaxError(where, "malformed operand");
}

ordered_json operand_to_json(const Operand& o) {
  switch (o.kind) {
    case Operand::Kind::Variable:
    case Operand::Kind::Field:
      return o.text;
    case Operand::Kind::Null:
      return nullptr;
    case Operand::Kind::Integer:
      return o.integer;
    case Operand::Kind::Real:
      return o.real;
    case Operand::Kind::Boolean:
      return o.boolean;
    case Operand::Kind::String:
      return ordered_json{{"const", o.text}};
  }
  return nullptr;
}

CorpusDocument document_from_json(const json& j) {
  expect_keys(j, "", {"version", "classes"}, {"externals", "callback_edges"});
  CorpusDocument doc;
  const auto& v = j.at("version");
  if (!v.is_number_integer() || v.get<int>() != 1) {
    throw SyntaxError("/version", "unsupported version (expected 1)");
  }
  doc.version = 1;
  doc.externals = get_string_list(j, "externals", "");
  const auto& classes = get_array(j, "classes", "");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    doc.classes.push_back(class_from_json(classes[i], "/classes/" + std::to_string(i)));
  }
  const auto& cbs = get_array(j, "callback_edges", "");
  for (std::size_t i = 0; i < cbs.size(); ++i) {
    doc.callbackEdges.push_back(callback_from_json(cbs[i], "/callback_edges/" + std::to_string(i)));
  }
  return doc;
}

CorpusDocument parse_document(std::string_view text) {
  return document_from_json(parse_json_text(text));
}

Corpus parse_corpus(std::string_view text) { return Corpus(parse_document(text)); }

ordered_json document_to_json(const CorpusDocument& doc) {
  ordered_json j;
  j["version"] = doc.version;
  j["externals"] = doc.externals;
  j["classes"] = ordered_json::array();
  for (const auto& c : doc.classes) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["package"] = c.package;
    cj["kind"] = to_string(c.kind);
    if (c.superclass) cj["superclass"] = *c.superclass;
    if (!c.interfaces.empty()) cj["interfaces"] = c.interfaces;
    if (c.enclosing) cj["enclosing"] = *c.enclosing;
    cj["methods"] = ordered_json::array();
    for (const auto& m : c.methods) {
      ordered_json mj;
      mj["name"] = m.name;
      mj["signature"] = m.signature;
      mj["params"] = ordered_json::array();
      for (const auto& p : m.params) mj["params"].push_back(ordered_json{{"name", p.name}, {"type", p.type}});
      mj["returnType"] = m.returnType;
      std::vector<std::string> mods;
      if (m.isStatic) mods.push_back("static");
      if (m.isAbstract) mods.push_back("abstract");
      if (m.isNative) mods.push_back("native");
      if (!mods.empty()) mj["modifiers"] = mods;
      mj["body"] = block_to_json(m.body);
      cj["methods"].push_back(std::move(mj));
    }
    j["classes"].push_back(std::move(cj));
  }
  if (!doc.callbackEdges.empty()) {
    j["callback_edges"] = ordered_json::array();
    for (const auto& cb : doc.callbackEdges) {
      j["callback_edges"].push_back(ordered_json{
          {"registration", cb.registration}, {"interface", cb.interface}, {"callback", cb.callback}});
    }
  }
  return j;
}

std::string serialize_corpus(const CorpusDocument& doc, int indent) {
  return document_to_json(doc).dump(indent);
}

std::vector<CallbackEntry> parse_callback_table(std::string_view text) {
  auto j = parse_json_text(text);
  if (!j.is_array()) throw SyntaxError("", "callback table must be an array");
  std::vector<CallbackEntry> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(callback_from_json(j[i], "/" + std::to_string(i)));
  }
  return out;
}

}  // namespace helper_audit
