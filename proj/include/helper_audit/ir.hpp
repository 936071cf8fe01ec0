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

// Structured three-address IR for framework corpora.
//
// A corpus is a list of classes; each method body is a tree of statements
// where only If nests. Statements are numbered depth-first (an If comes before
// the statements of its then block, which come before its else block), and
// every analysis addresses statements by that number.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace helper_audit {

// An operand of an invoke, assignment, comparison or return.
//
// Variables are plain identifiers. Field paths always contain a dot
// ("this.mCount", "v.mList", "android.os.Foo.sCache") and are treated as a
// single named location inside one method.
struct Operand {
  enum class Kind { Variable, Field, Null, Integer, Real, Boolean, String };

  Kind kind = Kind::Null;
  std::string text;  // variable name, field path or string literal
  std::int64_t integer = 0;
  double real = 0.0;
  bool boolean = false;

  static Operand variable(std::string name);
  static Operand field(std::string path);
  // Picks Variable or Field depending on whether `name` contains a dot.
  static Operand name(std::string name);
  static Operand null();
  static Operand integer_constant(std::int64_t v);
  static Operand real_constant(double v);
  static Operand boolean_constant(bool v);
  static Operand string_constant(std::string v);

  bool is_name() const { return kind == Kind::Variable || kind == Kind::Field; }
  bool is_constant() const { return !is_name(); }
  // Human readable form used in loci and literal origins.
  std::string to_string() const;

  friend bool operator==(const Operand&, const Operand&);
};

enum class Dispatch { Virtual, Static, Interface, Special };
enum class Relation { Eq, Ne, Lt, Le, Gt, Ge };

const char* to_string(Dispatch d);
const char* to_string(Relation r);
std::optional<Dispatch> parse_dispatch(std::string_view s);
std::optional<Relation> parse_relation(std::string_view s);

struct Invoke {
  Dispatch dispatch = Dispatch::Static;
  std::string target;  // canonical method reference
  std::optional<std::string> receiver;
  std::vector<Operand> args;
  std::optional<std::string> result;

  friend bool operator==(const Invoke&, const Invoke&) = default;
};

struct BinOp {
  Operand left;
  std::string op;
  Operand right;

  friend bool operator==(const BinOp&, const BinOp&) = default;
};

struct Assign {
  std::string lhs;  // variable or field path
  std::variant<Operand, BinOp> rhs;

  friend bool operator==(const Assign&, const Assign&) = default;
};

struct Condition {
  Operand left;
  Relation relation = Relation::Eq;
  Operand right;

  friend bool operator==(const Condition&, const Condition&) = default;
};

struct Statement;

struct If {
  Condition cond;
  std::vector<Statement> thenBlock;
  std::vector<Statement> elseBlock;

  friend bool operator==(const If&, const If&);
};

struct Throw {
  std::string exceptionType;

  friend bool operator==(const Throw&, const Throw&) = default;
};

struct Return {
  std::optional<Operand> value;

  friend bool operator==(const Return&, const Return&) = default;
};

struct Statement {
  std::variant<Invoke, Assign, If, Throw, Return> node;

  template <typename T>
  const T* as() const { return std::get_if<T>(&node); }

  friend bool operator==(const Statement&, const Statement&);
};

struct Param {
  std::string name;
  std::string type;

  friend bool operator==(const Param&, const Param&) = default;
};

struct MethodDef {
  std::string name;
  std::string signature;  // "name(t1,t2)"
  std::vector<Param> params;
  std::string returnType = "void";
  std::vector<Statement> body;
  bool isStatic = false;
  bool isAbstract = false;
  bool isNative = false;

  std::optional<std::size_t> param_index(std::string_view name) const;

  friend bool operator==(const MethodDef&, const MethodDef&) = default;
};

enum class ClassKind { Class, Interface, Abstract };

const char* to_string(ClassKind k);
std::optional<ClassKind> parse_class_kind(std::string_view s);

struct ClassDef {
  std::string name;
  std::string package;
  ClassKind kind = ClassKind::Class;
  std::optional<std::string> superclass;
  std::vector<std::string> interfaces;
  std::optional<std::string> enclosing;
  std::vector<MethodDef> methods;

  bool is_concrete() const { return kind == ClassKind::Class; }

  friend bool operator==(const ClassDef&, const ClassDef&) = default;
};

// One implicit-call rule: invoking `registration` later calls `callback` on
// the registered object, which implements `interface`.
struct CallbackEntry {
  std::string registration;  // method reference
  std::string interface;     // class name
  std::string callback;      // signature, e.g. "onEvent(int)"

  friend bool operator==(const CallbackEntry&, const CallbackEntry&) = default;
  friend auto operator<=>(const CallbackEntry&, const CallbackEntry&) = default;
};

// The raw corpus as read from disk, before resolution.
struct CorpusDocument {
  int version = 1;
  std::vector<std::string> externals;
  std::vector<ClassDef> classes;
  std::vector<CallbackEntry> callbackEdges;

  friend bool operator==(const CorpusDocument&, const CorpusDocument&) = default;
};

// ---------------------------------------------------------------------------
// Method references.

struct MethodRefParts {
  std::string className;
  std::string signature;  // "name(t1,t2)"
  std::string name;
};

// Splits "pkg.Cls.name(t1,t2)". Returns nullopt for malformed references.
std::optional<MethodRefParts> split_method_ref(std::string_view ref);
std::string make_method_ref(std::string_view className, std::string_view signature);
std::string make_signature(std::string_view name, const std::vector<Param>& params);
// Simple (class-stripped) method name of a reference; the reference itself
// if it cannot be split.
std::string simple_name(std::string_view ref);
// "pkg.Cls.name" part of a reference, without the parameter list.
std::string qualified_name(std::string_view ref);

// ---------------------------------------------------------------------------
// Depth-first statement numbering.

struct FlatStatement {
  const Statement* stmt = nullptr;
  std::size_t index = 0;
  // For an If: [index + 1, elseBegin) is the then block and [elseBegin, end)
  // the else block. For other statements end == elseBegin == index + 1.
  std::size_t elseBegin = 0;
  std::size_t end = 0;
  int depth = 0;

  bool in_then(std::size_t i) const { return i > index && i < elseBegin; }
  bool in_else(std::size_t i) const { return i >= elseBegin && i < end; }
  bool contains(std::size_t i) const { return i > index && i < end; }
};

using FlatBody = std::vector<FlatStatement>;

FlatBody flatten(const std::vector<Statement>& body);

// ---------------------------------------------------------------------------
// Type hierarchy.

class TypeHierarchy {
 public:
  TypeHierarchy() = default;

  // Throws CycleError when supertypes form a cycle. Names in `externals` that
  // appear as supertypes become leaf nodes of the hierarchy.
  static TypeHierarchy build(const std::vector<ClassDef>& classes,
                             const std::vector<std::string>& externals);

  bool contains(const std::string& name) const { return subtypes_.count(name) != 0; }
  // Reflexive-transitive subtypes; throws UnknownClass.
  const std::set<std::string>& subtypes_of(const std::string& name) const;
  // Reflexive-transitive supertypes; throws UnknownClass.
  const std::set<std::string>& supertypes_of(const std::string& name) const;
  bool is_subtype(const std::string& sub, const std::string& super) const;

  const std::map<std::string, std::set<std::string>>& subtype_index() const { return subtypes_; }
  // Interface name -> classes (not interfaces) implementing it, transitively.
  const std::map<std::string, std::set<std::string>>& implementor_index() const {
    return implementors_;
  }
  std::size_t edge_count() const { return edgeCount_; }

 private:
  std::map<std::string, std::set<std::string>> subtypes_;
  std::map<std::string, std::set<std::string>> supertypes_;
  std::map<std::string, std::set<std::string>> implementors_;
  std::size_t edgeCount_ = 0;
};

std::set<std::string> subtypes_of(const TypeHierarchy& h, const std::string& name);

// ---------------------------------------------------------------------------
// Resolved corpus.

// Immutable, resolved view over a CorpusDocument. Cheap to copy; copies share
// the underlying document.
class Corpus {
 public:
  struct MethodEntry {
    std::string ref;
    const ClassDef* owner = nullptr;
    const MethodDef* def = nullptr;
    FlatBody flat;
  };

  // Resolves every class and method reference; throws ResolutionError or
  // CycleError.
  explicit Corpus(CorpusDocument doc);

  const CorpusDocument& document() const { return state_->doc; }
  const std::vector<ClassDef>& classes() const { return state_->doc.classes; }
  const std::vector<CallbackEntry>& callback_edges() const { return state_->doc.callbackEdges; }
  const TypeHierarchy& hierarchy() const { return state_->hierarchy; }

  const ClassDef* find_class(const std::string& name) const;
  bool is_external(const std::string& name) const;
  // Corpus class or declared external.
  bool knows_class(const std::string& name) const;

  // Exact declared method; nullptr if absent.
  const MethodEntry* method(const std::string& ref) const;
  const MethodEntry& require_method(const std::string& ref) const;  // throws UnknownMethod
  // All declared method references, sorted.
  const std::vector<std::string>& method_refs() const { return state_->sortedRefs; }

  // First declaration of `signature` found walking the superclass chain from
  // `className` (inclusive). Abstract declarations are skipped when
  // `concreteOnly` is set.
  const MethodEntry* lookup_superclass_chain(const std::string& className,
                                             const std::string& signature,
                                             bool concreteOnly) const;
  // Any declaration on `className` or any of its supertypes.
  const MethodEntry* lookup_any_ancestor(const std::string& className,
                                         const std::string& signature) const;

  // Outermost enclosing class (the class itself when not nested).
  std::string top_level_of(const std::string& className) const;

 private:
  struct State {
    CorpusDocument doc;
    std::map<std::string, std::size_t> classIndex;
    std::set<std::string> externals;
    std::map<std::string, MethodEntry> methods;
    std::vector<std::string> sortedRefs;
    TypeHierarchy hierarchy;
  };
  std::shared_ptr<const State> state_;
};

}  // namespace helper_audit
